//! Verification suites over a model.

use std::thread;

use clap::ValueEnum;
use jordan_tp::{Check, Error, ModelDescriptor, Report, Result, SelfDualCone, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Spectral,
    Logic,
    Tp,
    Selfdual,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::Axioms => "axioms",
            Self::Spectral => "spectral",
            Self::Logic => "logic",
            Self::Tp => "tp",
            Self::Selfdual => "selfdual",
            Self::All => "all",
        }
    }

    fn parts(self) -> &'static [Suite] {
        match self {
            Self::All => &[Self::Axioms, Self::Spectral, Self::Logic, Self::Tp, Self::Selfdual],
            Self::Axioms => &[Self::Axioms],
            Self::Spectral => &[Self::Spectral],
            Self::Logic => &[Self::Logic],
            Self::Tp => &[Self::Tp],
            Self::Selfdual => &[Self::Selfdual],
        }
    }
}

pub const SYMMETRY_TOL: f64 = 1e-9;

type Step = fn(&ModelDescriptor, u64, usize, &Tolerance<f64>) -> Result<Report>;

fn steps(suite: Suite) -> Vec<(&'static str, Step)> {
    match suite {
        Suite::Axioms => vec![
            ("axiom1", |m, s, t, tol| m.verify_axiom1(s, t, tol)),
            ("axiom2", |m, s, t, tol| m.verify_axiom2(s, t, tol)),
            ("star", |m, s, t, tol| m.verify_star(s, t, tol)),
            ("strong", |m, s, t, tol| m.verify_strong_state_space(s, t, tol)),
            ("orthogonality", |m, s, t, tol| m.verify_orthogonality(s, t, tol)),
        ],
        Suite::Spectral => vec![("spectral", |m, s, t, tol| m.verify_spectral(s, t, tol))],
        Suite::Logic => vec![("logic", |m, s, t, tol| m.verify_logic(s, t, tol))],
        Suite::Tp => vec![
            ("tp.symmetry_defect", |m, s, t, _| {
                let d: f64 = m.symmetry_defect(s, t);
                let mut r = Report::new();
                r.push(Check::new("tp.symmetry_defect", d, SYMMETRY_TOL));
                Ok(r)
            }),
            ("tp", |m, s, t, _| m.verify_tp_rows::<f64>(s, t)),
            ("inner", |m, s, t, tol| m.check_inner_product(s, t, tol)),
            ("normeq", |m, s, t, tol| m.check_norm_equivalence(s, t, tol)),
        ],
        Suite::Selfdual => vec![
            ("selfdual", |m, s, t, tol| m.check_self_duality(s, t, tol)),
            ("cone", |m, s, t, tol| SelfDualCone::spectral(*m)?.verify_all(s, t, tol)),
        ],
        Suite::All => unreachable!("expanded by Suite::parts"),
    }
}

/// Unsupported steps become skipped checks; other library errors become a
/// failed check carrying the message.
fn settle(name: &str, outcome: Result<Report>) -> Report {
    match outcome {
        Ok(r) => r,
        Err(Error::Unsupported(reason)) => {
            let mut r = Report::new();
            r.push(Check::skipped(name, reason));
            r
        }
        Err(e) => {
            let mut r = Report::new();
            r.push(Check::new(name, 1.0, 0.0).with_note(format!("error: {e}")));
            r
        }
    }
}

/// Runs every step of `suite` on its own thread; checks come back sorted by
/// name so the output does not depend on scheduling.
pub fn run(model: &ModelDescriptor, suite: Suite, seed: u64, trials: usize, tol: &Tolerance<f64>) -> Report {
    let all: Vec<(&'static str, Step)> = suite.parts().iter().flat_map(|&s| steps(s)).collect();
    let mut report = Report::new();
    thread::scope(|scope| {
        let handles: Vec<_> =
            all.iter().map(|&(name, step)| (name, scope.spawn(move || step(model, seed, trials, tol)))).collect();
        for (name, h) in handles {
            let outcome = h.join().unwrap_or_else(|_| Err(Error::OracleFailure(format!("{name} panicked"))));
            report.extend(settle(name, outcome));
        }
    });
    report.sort();
    report
}

//! Sampling verifier for the spectral layer.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::element::{Element, Tolerance};
use crate::error::Result;
use crate::model::ModelDescriptor;
use crate::models::Shape;
use crate::report::{Check, Report, Worst};
use crate::rng::rng_for_tagged;
use crate::scalar::Scalar;

/// Threshold above which the polarized product counts as visibly nonlinear.
pub const NONLINEARITY_FLOOR: f64 = 1e-3;

/// Coefficient kept at least `margin` away from each point of `avoid`.
fn separated<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, avoid: &[f64], margin: f64) -> f64 {
    loop {
        let s = rng.random_range(lo..hi);
        if avoid.iter().all(|a| (s - a).abs() >= margin) {
            return s;
        }
    }
}

impl ModelDescriptor {
    /// Reconstruction, frame completeness and cone/norm consistency of the
    /// spectral decomposition, plus the linearity diagnostic of the
    /// polarized product.
    ///
    /// Consistency samples are built as `Σ s_k f_k` over a random frame with
    /// known coefficients, so cone membership, the unit interval and the
    /// order norm have independent expected answers.
    pub fn verify_spectral<T: Scalar>(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let ctol = tol.check_tol.as_f64();
        let m = self.info_capacity();
        let unit = self.order_unit::<T>();
        let mut recon = Worst::default();
        let mut frame_sum = Worst::default();
        let mut frame_size = Worst::default();
        let mut non_atoms = 0usize;
        let mut eig = Worst::default();
        let mut norm = Worst::default();
        let mut square = Worst::default();
        let mut cone_mismatch = 0usize;
        let mut interval_mismatch = 0usize;
        let mut cone_witness = None;

        for trial in 0..trials.max(1) {
            let mut rng = rng_for_tagged(seed, "spectral", trial as u64);
            let a = self.random_element_with::<T, _>(&mut rng, Shape::Any);
            let sf = self.spectral_decompose(&a, tol)?;
            let d = self.order_norm(&(&a - &sf.reconstruct()), tol)?;
            recon.record(d.as_f64(), || a.to_f64());
            let d = self.order_norm(&(&sf.frame_sum() - &unit), tol)?;
            frame_sum.record(d.as_f64(), || a.to_f64());
            frame_size.record(sf.len().saturating_sub(m) as f64, || a.to_f64());
            for atom in sf.atoms() {
                if !self.is_atom(atom, tol)? {
                    non_atoms += 1;
                }
            }

            let frame = self.random_frame_with::<T, _>(&mut rng);
            let s: Vec<f64> = frame
                .iter()
                .map(|_| {
                    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                    sign * (0.01 + rng.sample::<f64, _>(StandardNormal).abs())
                })
                .collect();
            let built =
                frame.iter().zip(&s).fold(Element::zeros(self.ambient_dim()), |acc, (f, &c)| acc.axpy(T::lit(c), f));
            let got = self.spectral_decompose(&built, tol)?;
            let mut want = s.clone();
            want.sort_by(|x, y| y.total_cmp(x));
            let mut have: Vec<f64> = got.eigenvalues().into_iter().map(Scalar::as_f64).collect();
            have.sort_by(|x, y| y.total_cmp(x));
            let dev = if have.len() == want.len() {
                want.iter().zip(&have).map(|(w, h)| (w - h).abs()).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            eig.record(dev, || built.to_f64());

            let expected_pos = s.iter().all(|&c| c >= 0.0);
            if self.cone_contains(&built, tol)? != expected_pos {
                cone_mismatch += 1;
                cone_witness.get_or_insert_with(|| built.to_f64());
            }
            let expected_norm = s.iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
            norm.record((self.order_norm(&built, tol)?.as_f64() - expected_norm).abs(), || built.to_f64());
            let sq = frame
                .iter()
                .zip(&s)
                .fold(Element::zeros(self.ambient_dim()), |acc, (f, &c)| acc.axpy(T::lit(c * c), f));
            let d = self.order_norm(&(&self.square(&built, tol)? - &sq), tol)?.as_f64()
                / (1.0 + expected_norm * expected_norm);
            square.record(d, || built.to_f64());

            let t: Vec<f64> = frame.iter().map(|_| separated(&mut rng, -0.5, 1.5, &[0.0, 1.0], 0.01)).collect();
            let inside = t.iter().all(|&c| (0.0..=1.0).contains(&c));
            let b =
                frame.iter().zip(&t).fold(Element::zeros(self.ambient_dim()), |acc, (f, &c)| acc.axpy(T::lit(c), f));
            if self.in_unit_interval(&b, tol)? != inside {
                interval_mismatch += 1;
            }
        }

        let mut report = Report::new();
        report.push(recon.into_check("spectral.reconstruction", ctol));
        report.push(frame_sum.into_check("spectral.frame_sums_to_unit", ctol));
        report.push(frame_size.into_check("spectral.frame_size_at_most_capacity", 0.0));
        report.push(Check::new("spectral.frame_atoms", non_atoms as f64, 0.0));
        report.push(eig.into_check("spectral.eigenvalues_match_construction", ctol));
        let mut cone = Check::new("spectral.cone_matches_spectrum", cone_mismatch as f64, 0.0);
        if let Some(w) = cone_witness {
            cone = cone.with_witness(w);
        }
        report.push(cone);
        report.push(Check::new("spectral.unit_interval_matches_spectrum", interval_mismatch as f64, 0.0));
        report.push(norm.into_check("spectral.order_norm_matches_spectrum", ctol));
        report.push(square.into_check("spectral.square_is_functional_calculus", ctol));

        let lin = self.linearity_defect(seed, trials.min(200), tol)?.as_f64();
        if self.is_jordan() {
            report.push(Check::new("jordan.linearity_defect", lin, 10.0 * ctol));
        } else {
            // Outside Jordan algebras the polarized product must visibly fail
            // to be linear; the shortfall below the floor is the defect.
            report.push(
                Check::new("jordan.nonlinearity_detected", (NONLINEARITY_FLOOR - lin).max(0.0), 0.0)
                    .with_note(format!("linearity_defect = {lin:e}")),
            );
        }
        Ok(report)
    }
}

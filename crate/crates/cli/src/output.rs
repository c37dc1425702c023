//! Report types and serialization: JSON with 17 significant digits, or CSV.

use std::io::{self, Write};

use jordan_tp::transition::format_f64;
use jordan_tp::{Check, Tolerance};
use serde::Serialize;
use serde_json::ser::Formatter;

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub model: serde_json::Value,
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub tolerances: Tolerance<f64>,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# model={}\n", self.model));
        out.push_str(&format!("# suite={} seed={} trials={}\n", self.suite, self.seed, self.trials));
        out.push_str(&format!("# wall_time_ms={}\n", self.wall_time_ms));
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(["name", "passed", "defect", "tolerance", "note"]).expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                c.name.as_str(),
                if c.passed { "true" } else { "false" },
                &format_f64(c.defect),
                &format_f64(c.tolerance),
                c.note.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv"));
        out
    }
}

/// Pretty JSON whose floats carry 17 significant digits.
struct FullPrecision<'a>(serde_json::ser::PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

pub fn to_json<S: Serialize>(value: &S) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, FullPrecision(serde_json::ser::PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report values serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits utf-8")
}

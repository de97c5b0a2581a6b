use clap::ValueEnum;
use serde_json::{json, Value};

use cn_lattice::distribution::{KilledEvolution, Measure};
use cn_lattice::kernel::{Site, ValidationReport};
use cn_lattice::lattice::SupportSet;
use cn_lattice::rational::{format_decimal, to_f64, Rational};
use cn_lattice::transform::{CoefficientTable, TriangularSystem};
use cn_lattice::verify::mc::McHedge;
use cn_lattice::verify::VerificationReport;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

pub struct Renderer {
    format: Format,
    float: bool,
    digits: usize,
}

fn coords(site: &Site) -> String {
    site.coords()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("values always serialize"));
}

impl Renderer {
    pub fn new(format: Format, float: bool, digits: usize) -> Self {
        Renderer {
            format,
            float,
            digits,
        }
    }

    fn num(&self, r: &Rational) -> String {
        if self.float {
            format_decimal(to_f64(r), self.digits)
        } else {
            r.to_string()
        }
    }

    pub fn validation(&self, report: &ValidationReport) {
        match self.format {
            Format::Json => emit(&serde_json::to_value(report).expect("report serializes")),
            Format::Tsv => {
                if report.ok {
                    println!("ok");
                }
                for v in &report.violations {
                    println!("violation\t{v}");
                }
            }
        }
    }

    pub fn support(&self, set: &SupportSet) {
        match self.format {
            Format::Json => emit(&serde_json::to_value(set).expect("support set serializes")),
            Format::Tsv => {
                for p in &set.points {
                    println!("{}\t{}", p.s, coords(&p.y));
                }
            }
        }
    }

    fn measure_value(&self, m: &Measure) -> Value {
        Value::Array(
            m.iter()
                .map(|(site, mass)| json!({"site": site, "mass": self.num(mass)}))
                .collect(),
        )
    }

    pub fn measure(&self, m: &Measure) {
        match self.format {
            Format::Json => emit(&self.measure_value(m)),
            Format::Tsv => {
                for (site, mass) in m.iter() {
                    println!("{}\t{}", coords(site), self.num(mass));
                }
            }
        }
    }

    pub fn killed(&self, k: &KilledEvolution) {
        match self.format {
            Format::Json => emit(&json!({
                "surviving": self.measure_value(&k.surviving),
                "absorbed": k.absorbed.iter().map(|a| json!({
                    "time": a.time,
                    "site": a.site,
                    "mass": self.num(&a.mass),
                })).collect::<Vec<_>>(),
            })),
            Format::Tsv => {
                for (site, mass) in k.surviving.iter() {
                    println!("surviving\t\t{}\t{}", coords(site), self.num(mass));
                }
                for a in &k.absorbed {
                    println!("absorbed\t{}\t{}\t{}", a.time, coords(&a.site), self.num(&a.mass));
                }
            }
        }
    }

    /// A single value prints bare in every format.
    pub fn value(&self, r: &Rational) {
        println!("{}", self.num(r));
    }

    pub fn coefficients(&self, table: &CoefficientTable) {
        match self.format {
            Format::Json => emit(&json!({
                "t": table.t,
                "x": table.x,
                "coeffs": table.coeffs.iter().map(|(p, c)| json!({
                    "s": p.s,
                    "y": p.y,
                    "c": self.num(c),
                })).collect::<Vec<_>>(),
            })),
            Format::Tsv => {
                for (p, c) in &table.coeffs {
                    println!("{}\t{}\t{}", p.s, coords(&p.y), self.num(c));
                }
            }
        }
    }

    pub fn system(&self, sys: &TriangularSystem) {
        let rows: Vec<Vec<String>> = sys
            .rows()
            .iter()
            .map(|row| row.iter().map(|e| self.num(e)).collect())
            .collect();
        match self.format {
            Format::Json => emit(&json!({
                "t": sys.index.t,
                "x": sys.index.x,
                "sign": sys.sign,
                "points": sys.index.points,
                "entries": rows,
            })),
            Format::Tsv => {
                for row in rows {
                    println!("{}", row.join("\t"));
                }
            }
        }
    }

    pub fn reports(&self, reports: &[VerificationReport]) {
        for r in reports {
            match self.format {
                Format::Json => emit(&json!({
                    "name": r.name,
                    "instance": r.instance,
                    "lhs": self.num(&r.lhs),
                    "rhs": self.num(&r.rhs),
                    "expect": r.expect,
                    "pass": r.pass,
                })),
                Format::Tsv => println!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.name,
                    self.num(&r.lhs),
                    self.num(&r.rhs),
                    serde_json::to_string(&r.expect).expect("relation serializes").trim_matches('"'),
                    r.pass,
                    r.instance
                ),
            }
        }
    }

    pub fn mc(&self, res: &McHedge) {
        let (lhs, rhs) = (res.lhs.rounded(), res.rhs.rounded());
        match self.format {
            Format::Json => emit(&json!({
                "lhs": lhs,
                "rhs": rhs,
                "exact": {"lhs": self.num(&res.exact_lhs), "rhs": self.num(&res.exact_rhs)},
            })),
            Format::Tsv => {
                println!("lhs\t{}\t{}\t{}", lhs.value, lhs.std_error, self.num(&res.exact_lhs));
                println!("rhs\t{}\t{}\t{}", rhs.value, rhs.std_error, self.num(&res.exact_rhs));
            }
        }
    }
}

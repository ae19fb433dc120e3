//! `KEY=VALUE` report lines.

use cvxcore::exactlin::format_rational;
use cvxcore::vopt::{Evidence, Verdict};
use cvxcore::{QVector, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Default)]
pub struct Report {
    lines: Vec<String>,
    pub code: i32,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut r = Report::default();
        r.put("command", command);
        r
    }

    pub fn put(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}={value}"));
    }

    pub fn flag(&mut self, key: &str, value: bool) {
        self.put(key, value);
    }

    /// Records a predicate; `false` makes the exit code 1.
    pub fn predicate(&mut self, key: &str, value: bool) {
        self.put(key, value);
        if !value {
            self.code = EXIT_NO;
        }
    }

    pub fn verdict(&mut self, key: &str, v: &Verdict) {
        self.put(key, v.label());
        match v {
            Verdict::Yes(e) | Verdict::No(e) => {
                let text = evidence(e);
                if !text.is_empty() {
                    self.put(&format!("{key}.evidence"), text);
                }
            }
            Verdict::Unknown { depth } => self.put(&format!("{key}.depth"), depth),
        }
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

pub fn q(r: &Rational) -> String {
    format_rational(r)
}

/// `1,3/4`: the same form `--point` accepts.
pub fn vec(v: &QVector) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn vecs(vs: &[QVector]) -> String {
    vs.iter().map(vec).collect::<Vec<_>>().join(";")
}

pub fn evidence(e: &Evidence) -> String {
    match e {
        Evidence::None => String::new(),
        Evidence::Witness(w) => format!("witness {}", vec(w)),
        Evidence::Functional(l) => format!("functional {}", vec(l)),
        Evidence::Functionals(ls) => format!("functionals {}", vecs(ls)),
        Evidence::Dilation { eps, rays, functional } => {
            format!("dilation eps={} rays={} functional={}", q(eps), vecs(rays), vec(functional))
        }
        Evidence::Neighborhood(eps) => format!("neighborhood eps={}", q(eps)),
        Evidence::Schedule(pairs) => {
            let p: Vec<String> = pairs.iter().map(|(e, d)| format!("{}:{}", q(e), q(d))).collect();
            format!("schedule eps:delta={}", p.join(";"))
        }
        Evidence::Farkas(ys) => {
            let p: Vec<String> = ys.iter().map(q).collect();
            format!("farkas {}", p.join(","))
        }
        Evidence::Implied(why) => format!("implied {why}"),
    }
}

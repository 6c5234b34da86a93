//! The uniform output record and its text, CSV and JSON renderings.

use std::fmt::Write as _;

use casimir_core::Real;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// One verification check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub deviation: String,
    pub tolerance: String,
}

/// Every command produces one of these; JSON always carries the same top-level keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: IndexMap<String, String>,
    pub digits: u32,
    pub results: IndexMap<String, String>,
    pub error_estimates: Option<IndexMap<String, String>>,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
}

impl OutputRecord {
    pub fn new(command: &str, digits: u32) -> Self {
        Self {
            command: command.to_string(),
            inputs: IndexMap::new(),
            digits,
            results: IndexMap::new(),
            error_estimates: None,
            warnings: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn result(&mut self, key: impl Into<String>, value: &Real) {
        self.results.insert(key.into(), decimal(value, self.digits));
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("record serializes");
                s.push('\n');
                s
            }
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{} ({}) digits={}", self.command, inputs.join(" "), self.digits).unwrap();
        let width = self.results.keys().map(|k| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.results {
            writeln!(out, "  {k:<width$} = {v}").unwrap();
        }
        if let Some(est) = &self.error_estimates {
            for (k, v) in est {
                writeln!(out, "  error({k}) ≤ {v}").unwrap();
            }
        }
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "  {verdict} {}  deviation {} tolerance {}", c.name, c.deviation, c.tolerance).unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "  warning: {w}").unwrap();
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        if self.command == "table" {
            out.push_str("p,zeta_half,ratio_p2\n");
            for p in self.inputs["p"].split(',') {
                let zeta = &self.results[&format!("zeta_half[p={p}]")];
                let ratio = &self.results[&format!("ratio_p2[p={p}]")];
                writeln!(out, "{p},{zeta},{ratio}").unwrap();
            }
            return out;
        }
        if !self.checks.is_empty() {
            out.push_str("name,passed,deviation,tolerance\n");
            for c in &self.checks {
                writeln!(out, "{},{},{},{}", csv_field(&c.name), c.passed, c.deviation, c.tolerance).unwrap();
            }
            return out;
        }
        out.push_str("key,value\n");
        for (k, v) in &self.results {
            writeln!(out, "{},{v}", csv_field(k)).unwrap();
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `value` rounded to exactly `digits` significant digits: positional when the
/// decimal exponent is modest, scientific otherwise.
pub fn decimal(value: &Real, digits: u32) -> String {
    let digits = digits.max(1) as usize;
    if value.is_zero() {
        return if digits == 1 { "0".to_string() } else { format!("0.{}", "0".repeat(digits - 1)) };
    }
    // value = ±0.MANTISSA × 10^exp
    let (negative, mantissa, exp) = value.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero value has an exponent");
    let sign = if negative { "-" } else { "" };
    let body = if exp <= 0 && exp > -6 {
        format!("0.{}{mantissa}", "0".repeat((-exp) as usize))
    } else if exp > 0 && (exp as usize) < digits {
        let (int, frac) = mantissa.split_at(exp as usize);
        format!("{int}.{frac}")
    } else if exp as usize == digits {
        mantissa
    } else {
        let (lead, rest) = mantissa.split_at(1);
        let e = exp - 1;
        if rest.is_empty() {
            format!("{lead}e{e}")
        } else {
            format!("{lead}.{rest}e{e}")
        }
    };
    format!("{sign}{body}")
}

/// Three significant digits in scientific form, for tolerances and estimates.
pub fn short(value: &Real) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let (negative, mantissa, exp) = value.to_sign_string_exp(10, Some(3));
    let exp = exp.expect("finite nonzero value has an exponent") - 1;
    let sign = if negative { "-" } else { "" };
    format!("{sign}{}.{}e{exp}", &mantissa[..1], &mantissa[1..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use casimir_core::numkernel::{pi, ratio};
    use casimir_core::real;

    fn sig_digits(s: &str) -> usize {
        let mantissa = s.trim_start_matches('-').split('e').next().unwrap();
        let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
        digits.trim_start_matches('0').len()
    }

    #[test]
    fn exact_significant_digits() {
        let cases = [
            (ratio(678_443_143_051, 10_000_000_000_000), 14),
            (pi(), 30),
            (-pi() * 1_000_000u32, 12),
            (ratio(1, 7_000_000_000), 8),
            (real(38_807.348_065_577f64), 5),
            (real(123_456_789u32), 6),
        ];
        for (v, d) in cases {
            let s = decimal(&v, d);
            assert_eq!(sig_digits(&s), d as usize, "{s}");
        }
    }

    #[test]
    fn layout() {
        assert_eq!(decimal(&pi(), 6), "3.14159");
        assert_eq!(decimal(&ratio(-1, 12), 4), "-0.08333");
        assert_eq!(decimal(&real(38_807.348_065_577f64), 5), "38807");
        assert_eq!(decimal(&real(38_807.348_065_577f64), 3), "3.88e4");
        assert_eq!(decimal(&ratio(1, 7_000_000_000), 3), "1.43e-10");
        assert_eq!(decimal(&real(0), 3), "0.00");
        assert_eq!(short(&ratio(1, 3_000_000)), "3.33e-7");
    }

    #[test]
    fn json_keys_are_stable() {
        let mut a = OutputRecord::new("identity", 10);
        a.result("density", &pi());
        let b = OutputRecord::new("check", 10);
        let keys = |r: &OutputRecord| {
            let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
            v.as_object().unwrap().keys().cloned().collect::<Vec<_>>()
        };
        assert_eq!(keys(&a), keys(&b));
    }
}

//! The .qo input format: a line-oriented key-value file with quoted series
//! literals, shared by the CLI and the C ABI.
//!
//! ```text
//! # the running example
//! vars = [x1, x2]
//! branch { name = "f1", root = "x1^(3/2)*x2", denom = 2 }
//! branch { name = "f2", root = "x1^5*x2^2", denom = 1 }
//! ```
//!
//! Explicit polynomials (`poly = "y^3 + x^2*y"`) are accepted for one
//! variable, where the roots are computed by Newton-Puiseux expansion.

use crate::cyclo::Cyclo;
use crate::error::{QoError, Result};
use crate::exponent::ExpVec;
use crate::np::{newton_puiseux_roots, RootStatus};
use crate::rat::Rat;
use crate::roots::{galois_orbit, Branch, RootSet};
use crate::series::FractionalSeries;
use crate::ypoly::SeriesYPoly;

#[derive(Clone, Debug)]
pub struct ProblemInput {
    pub vars: Vec<String>,
    pub branches: Vec<Branch>,
    pub poly: Option<SeriesYPoly>,
    pub poly_text: Option<String>,
    pub precision: Option<Rat>,
    pub conductor: Option<u32>,
}

impl ProblemInput {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// Expand into the validated root set. Explicit polynomials are factored
    /// by Newton-Puiseux expansion (one variable only) and their roots are
    /// grouped into Galois orbits, one branch per orbit.
    pub fn root_set(&self) -> Result<RootSet> {
        let mut branches = self.branches.clone();
        if branches.is_empty() {
            let Some(poly) = &self.poly else {
                return Err(QoError::Domain("input has neither branches nor poly".into()));
            };
            if self.dim() != 1 {
                return Err(QoError::Domain(
                    "computing roots from an explicit polynomial needs one variable; \
                     supply branches for d > 1"
                        .into(),
                ));
            }
            if !poly.is_weierstrass() {
                return Err(QoError::Domain("poly must be a Weierstrass polynomial".into()));
            }
            let target = match &self.precision {
                Some(p) => p.clone(),
                None => {
                    // past every coefficient exponent, so contacts resolve
                    let mut m = Rat::integer(2);
                    for c in poly.coeffs() {
                        for (e, _) in c.terms() {
                            let t = e.total();
                            if t > m {
                                m = t;
                            }
                        }
                    }
                    &m + &Rat::integer(2)
                }
            };
            let roots = newton_puiseux_roots(poly, &target)?;
            let mut pool: Vec<FractionalSeries> = Vec::new();
            for r in &roots {
                match r.status {
                    RootStatus::UnrepresentableConstant(_) => {
                        return Err(QoError::Domain(
                            "a root needs constants outside the cyclotomic tower; \
                             supply branches explicitly"
                                .into(),
                        ))
                    }
                    _ => {
                        if r.multiplicity > 1 {
                            return Err(QoError::NotQuasiOrdinary(
                                "repeated roots: the discriminant vanishes".into(),
                            ));
                        }
                        pool.push(r.series.clone());
                    }
                }
            }
            let mut n_den = 1i64;
            for s in &pool {
                let l = s.denominator_lcm();
                n_den = n_den / gcd(n_den, l) * l;
            }
            let mut idx = 1usize;
            while let Some(rep) = pool.first().cloned() {
                let orbit = galois_orbit(&rep, n_den);
                for o in &orbit {
                    let Some(pos) = pool.iter().position(|s| s == o) else {
                        return Err(QoError::Internal(
                            "computed roots are not closed under the Galois action".into(),
                        ));
                    };
                    pool.remove(pos);
                }
                branches.push(Branch {
                    label: format!("b{idx}"),
                    root: rep,
                    denom: n_den,
                });
                idx += 1;
            }
        }
        let rs = RootSet::from_branches(branches)?;
        // when both forms are present and exact, they must agree
        if let Some(poly) = &self.poly {
            if !self.branches.is_empty() && poly.is_exact() && rs.expand_polynomial().is_exact() {
                if &rs.expand_polynomial() != poly {
                    return Err(QoError::Domain(
                        "declared poly differs from the product over branch orbits".into(),
                    ));
                }
            }
        }
        Ok(rs)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

/// Parse a .qo problem file.
pub fn parse_input(text: &str) -> Result<ProblemInput> {
    let mut vars: Option<Vec<String>> = None;
    let mut branches: Vec<Branch> = Vec::new();
    let mut poly_text: Option<String> = None;
    let mut precision: Option<Rat> = None;
    let mut conductor: Option<u32> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let s = stripped.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(body) = s.strip_prefix("branch") {
            let body = body.trim();
            let inner = body
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| perr(line, 1, "branch needs a { ... } body on one line"))?;
            let fields = parse_fields(inner, line)?;
            let name = fields
                .iter()
                .find(|(k, _)| k == "name")
                .map(|(_, v)| v.clone())
                .ok_or_else(|| perr(line, 1, "branch needs a name"))?;
            let root_text = fields
                .iter()
                .find(|(k, _)| k == "root")
                .map(|(_, v)| v.clone())
                .ok_or_else(|| perr(line, 1, "branch needs a root"))?;
            let denom: i64 = fields
                .iter()
                .find(|(k, _)| k == "denom")
                .map(|(_, v)| v.parse().map_err(|_| perr(line, 1, "bad denom")))
                .transpose()?
                .unwrap_or(1);
            if denom < 1 {
                return Err(perr(line, 1, "denom must be a positive integer"));
            }
            let vars_ref = vars
                .as_ref()
                .ok_or_else(|| perr(line, 1, "vars must be declared before branches"))?;
            let series = parse_series_literal(&root_text, vars_ref, line)?;
            branches.push(Branch { label: name, root: series, denom });
            continue;
        }
        let (key, value) = s
            .split_once('=')
            .ok_or_else(|| perr(line, 1, "expected key = value"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "vars" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| perr(line, 1, "vars must be a [list]"))?;
                let names: Vec<String> = inner
                    .split(',')
                    .map(|v| v.trim().to_string())
                    .filter(|v| !v.is_empty())
                    .collect();
                if names.is_empty() {
                    return Err(perr(line, 1, "vars list is empty"));
                }
                vars = Some(names);
            }
            "poly" => {
                poly_text = Some(unquote(value, line)?);
            }
            "precision" => {
                precision =
                    Some(value.parse().map_err(|e: String| perr(line, 1, &e))?);
            }
            "conductor" => {
                conductor = Some(value.parse().map_err(|_| perr(line, 1, "bad conductor"))?);
            }
            other => {
                return Err(perr(line, 1, &format!("unknown key {other:?}")));
            }
        }
    }
    let vars = vars.ok_or_else(|| perr(1, 1, "missing vars declaration"))?;
    let poly = match &poly_text {
        Some(t) => Some(parse_poly_literal(t, &vars, 1)?),
        None => None,
    };
    let mut branches = branches;
    if let Some(p) = &precision {
        for b in branches.iter_mut() {
            b.root = b.root.clone().with_precision(Some(p.clone()));
        }
    }
    Ok(ProblemInput { vars, branches, poly, poly_text, precision, conductor })
}

fn perr(line: usize, col: usize, msg: &str) -> QoError {
    QoError::Parse { line, col, msg: msg.to_string() }
}

fn unquote(v: &str, line: usize) -> Result<String> {
    v.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .map(|s| s.to_string())
        .ok_or_else(|| perr(line, 1, "expected a quoted string"))
}

/// key = "value" or key = value pairs separated by commas.
fn parse_fields(inner: &str, line: usize) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut depth_quote = false;
    let mut cur = String::new();
    let mut parts = Vec::new();
    for ch in inner.chars() {
        match ch {
            '"' => {
                depth_quote = !depth_quote;
                cur.push(ch);
            }
            ',' if !depth_quote => {
                parts.push(cur.clone());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        parts.push(cur);
    }
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| perr(line, 1, "expected key = value inside braces"))?;
        let v = v.trim();
        let v = if v.starts_with('"') { unquote(v, line)? } else { v.to_string() };
        out.push((k.trim().to_string(), v));
    }
    Ok(out)
}

/// Series literal: no y allowed.
pub fn parse_series_literal(text: &str, vars: &[String], line: usize) -> Result<FractionalSeries> {
    let p = parse_poly_literal(text, vars, line)?;
    match p.degree() {
        None => Ok(FractionalSeries::zero(vars.len())),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(perr(line, 1, "y is not allowed in a series literal")),
    }
}

/// Polynomial literal in the declared variables and y.
pub fn parse_poly_literal(text: &str, vars: &[String], line: usize) -> Result<SeriesYPoly> {
    let mut p = Parser { chars: text.char_indices().peekable(), text, vars, line };
    let e = p.expr()?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.peek() {
        return Err(perr(line, i + 1, &format!("unexpected character {c:?}")));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    vars: &'a [String],
    line: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn col(&mut self) -> usize {
        self.chars.peek().map(|&(i, _)| i + 1).unwrap_or(self.text.len() + 1)
    }

    fn err(&mut self, msg: &str) -> QoError {
        perr(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if matches!(self.chars.peek(), Some(&(_, ch)) if ch == c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<SeriesYPoly> {
        let d = self.vars.len();
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '+')) => {
                    self.chars.next();
                    acc = acc.add(&self.term()?);
                }
                Some(&(_, '-')) => {
                    self.chars.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        let _ = d;
        Ok(acc)
    }

    fn term(&mut self) -> Result<SeriesYPoly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '*')) => {
                    self.chars.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(&(_, '/')) => {
                    self.chars.next();
                    let rhs = self.factor()?;
                    let c = rhs
                        .degree()
                        .filter(|&dg| dg == 0)
                        .map(|_| rhs.coeff(0))
                        .and_then(|s| {
                            if s.num_terms() == 1 {
                                s.terms().next().and_then(|(e, c)| {
                                    if e.is_zero() {
                                        Some(c.clone())
                                    } else {
                                        None
                                    }
                                })
                            } else {
                                None
                            }
                        })
                        .ok_or_else(|| self.err("can only divide by a nonzero constant"))?;
                    acc = acc.scale(&c.inv());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SeriesYPoly> {
        self.skip_ws();
        let d = self.vars.len();
        match self.chars.peek().copied() {
            Some((_, '(')) => {
                self.chars.next();
                let inner = self.expr()?;
                self.expect(')')?;
                self.maybe_power(inner)
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(SeriesYPoly::constant(FractionalSeries::constant(
                    d,
                    Cyclo::from_rat(r),
                )))
            }
            Some((_, c)) if c.is_alphabetic() => {
                let name = self.ident();
                if name == "y" {
                    let base = SeriesYPoly::y(d);
                    return self.maybe_power(base);
                }
                if name == "zeta" {
                    self.expect('(')?;
                    let n = self.integer()?;
                    self.expect(')')?;
                    if n < 1 {
                        return Err(self.err("zeta needs a positive order"));
                    }
                    let mut k = 1i64;
                    if self.eat('^') {
                        k = self.signed_integer()?;
                    }
                    return Ok(SeriesYPoly::constant(FractionalSeries::constant(
                        d,
                        Cyclo::root_of_unity(n as u32, k),
                    )));
                }
                if name == "sqrt" {
                    self.expect('(')?;
                    let m = self.signed_integer()?;
                    self.expect(')')?;
                    return Ok(SeriesYPoly::constant(FractionalSeries::constant(
                        d,
                        Cyclo::sqrt_int(m),
                    )));
                }
                let Some(vi) = self.vars.iter().position(|v| v == &name) else {
                    return Err(self.err(&format!("unknown variable {name:?}")));
                };
                let mut exp = Rat::ONE;
                if self.eat('^') {
                    exp = self.exponent()?;
                }
                if exp.is_negative() {
                    return Err(self.err("negative exponents are not allowed"));
                }
                let mut e = ExpVec::zero(d);
                e.0[vi] = exp;
                Ok(SeriesYPoly::constant(FractionalSeries::monomial(e, Cyclo::one())))
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    fn maybe_power(&mut self, base: SeriesYPoly) -> Result<SeriesYPoly> {
        if self.eat('^') {
            let e = self.integer()?;
            if e < 0 {
                return Err(self.err("negative exponents are not allowed"));
            }
            let mut acc = SeriesYPoly::constant(FractionalSeries::constant(
                self.vars.len(),
                Cyclo::one(),
            ));
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while matches!(self.chars.peek(), Some((_, c)) if c.is_alphanumeric() || *c == '_') {
            s.push(self.chars.next().unwrap().1);
        }
        s
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut s = String::new();
        while matches!(self.chars.peek(), Some((_, c)) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap().1);
        }
        if s.is_empty() {
            return Err(self.err("expected an integer"));
        }
        s.parse().map_err(|_| self.err("integer overflow"))
    }

    fn signed_integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat('-');
        let v = self.integer()?;
        Ok(if neg { -v } else { v })
    }

    /// `p` or `p/q`.
    fn rational(&mut self) -> Result<Rat> {
        let num = self.integer()?;
        if self.eat('/') {
            let den = self.integer()?;
            if den == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::integer(num))
        }
    }

    /// Exponent: integer, or (a/b) with rationals.
    fn exponent(&mut self) -> Result<Rat> {
        self.skip_ws();
        if self.eat('(') {
            let neg = self.eat('-');
            let r = self.rational()?;
            self.expect(')')?;
            Ok(if neg { -r } else { r })
        } else {
            let neg = self.eat('-');
            let r = Rat::integer(self.integer()?);
            Ok(if neg { -r } else { r })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example_file() {
        let text = r#"
# the running example
vars = [x1, x2]
branch { name = "f1", root = "x1^(3/2)*x2", denom = 2 }
branch { name = "f2", root = "x1^5*x2^2", denom = 1 }
"#;
        let input = parse_input(text).unwrap();
        assert_eq!(input.vars, vec!["x1", "x2"]);
        assert_eq!(input.branches.len(), 2);
        let rs = input.root_set().unwrap();
        assert_eq!(rs.len(), 3);
    }

    #[test]
    fn parse_poly_file() {
        let text = "vars = [x]\npoly = \"y^3 + x^2*y\"\n";
        let input = parse_input(text).unwrap();
        let rs = input.root_set().unwrap();
        assert_eq!(rs.len(), 3);
        assert_eq!(rs.branches.len(), 3); // 0, ix, -ix: three orbits
        let f = rs.expand_polynomial();
        assert_eq!(&f, input.poly.as_ref().unwrap());
    }

    #[test]
    fn literal_coefficients() {
        let vars = vec!["x1".to_string(), "x2".to_string()];
        let s = parse_series_literal(
            "sqrt(2)*x1^(3/2)*x2 + (1/2)*sqrt(2)*x1^(7/4)*x2^(3/2)",
            &vars,
            1,
        )
        .unwrap();
        assert_eq!(s.num_terms(), 2);
        let e = ExpVec(vec![Rat::new(3, 2), Rat::ONE]);
        assert_eq!(s.coeff(&e), Cyclo::sqrt_int(2));
        // zeta literals
        let z = parse_series_literal("zeta(8)^3 * x1", &vars, 1).unwrap();
        assert_eq!(z.coeff(&ExpVec(vec![Rat::ONE, Rat::ZERO])), Cyclo::root_of_unity(8, 3));
    }

    #[test]
    fn syntax_errors() {
        let vars = vec!["x1".to_string()];
        assert!(parse_series_literal("x1^(3/0)", &vars, 1).is_err());
        assert!(parse_series_literal("q + 1", &vars, 1).is_err());
        assert!(parse_series_literal("y + x1", &vars, 1).is_err());
        assert!(parse_input("branch { name = \"a\", root = \"x\", denom = 2 }").is_err());
    }
}

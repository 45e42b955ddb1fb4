//! Laurent polynomials over the zeta-monomial ring, in one of three
//! canonical variables: `u = 4y`, `y = pi*tau2`, or `tau2` itself.
//! Conversion between variables is an exact invertible rescaling of
//! coefficients (powers of 4, with `pi`-powers absorbed into the monomials
//! for the `tau2` variable).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{rat_parse, rat_string, Rational};
use crate::zeta::{SymbolicConstant, ZetaMonomial};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variable {
    /// `u = 4y = 4 pi tau2`
    #[serde(rename = "u")]
    U,
    /// `y = pi tau2`
    #[serde(rename = "y")]
    Y,
    /// `tau2` itself; coefficients then carry explicit `pi`-powers.
    #[serde(rename = "tau2")]
    Tau2,
}

impl Variable {
    pub fn symbol(self) -> &'static str {
        match self {
            Variable::U => "u",
            Variable::Y => "y",
            Variable::Tau2 => "tau2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(Variable::U),
            "y" => Ok(Variable::Y),
            "tau2" => Ok(Variable::Tau2),
            _ => Err(Error::Domain(format!("unknown variable {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Latex,
    Json,
}

impl RenderFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(RenderFormat::Text),
            "latex" => Ok(RenderFormat::Latex),
            "json" => Ok(RenderFormat::Json),
            _ => Err(Error::Domain(format!("unknown format {s:?}"))),
        }
    }
}

/// Finite map `power -> coefficient` with a tagged variable and the weight
/// of the graph function it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    variable: Variable,
    weight: u32,
    coeffs: BTreeMap<i64, SymbolicConstant>,
}

impl LaurentPolynomial {
    pub fn new(variable: Variable, weight: u32) -> Self {
        Self { variable, weight, coeffs: BTreeMap::new() }
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, power: i64) -> SymbolicConstant {
        self.coeffs.get(&power).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, power: i64, coeff: SymbolicConstant) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(power) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Powers in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &SymbolicConstant)> {
        self.coeffs.iter().map(|(&p, c)| (p, c))
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    /// Checks the Theorem-1 contract that all powers lie in `[1-w, w]`.
    pub fn check_degree_span(&self) -> Result<()> {
        if let Some((lo, hi)) = self.degree_range() {
            let w = self.weight as i64;
            if lo < 1 - w || hi > w {
                return Err(Error::Domain(format!(
                    "degree span ({hi},{lo}) escapes ({w},{})",
                    1 - w
                )));
            }
        }
        Ok(())
    }

    /// Exact change of variable. Round-tripping returns the identical map.
    pub fn convert_variable(&self, target: Variable) -> Self {
        if target == self.variable {
            return self.clone();
        }
        // Rescale factor per unit power, split into a rational part
        // (powers of 4) and a pi-power offset.
        let (four_pow, pi_pow): (i64, i64) = match (self.variable, target) {
            (Variable::U, Variable::Y) => (1, 0),     // u^p = 4^p y^p
            (Variable::Y, Variable::U) => (-1, 0),    // y^p = 4^-p u^p
            (Variable::Y, Variable::Tau2) => (0, 1),  // y^p = pi^p tau2^p
            (Variable::Tau2, Variable::Y) => (0, -1),
            (Variable::U, Variable::Tau2) => (1, 1),  // u^p = 4^p pi^p tau2^p
            (Variable::Tau2, Variable::U) => (-1, -1),
            _ => unreachable!(),
        };
        let mut out = Self::new(target, self.weight);
        for (&p, c) in &self.coeffs {
            let mut coeff = c.clone();
            if four_pow != 0 {
                let e = (four_pow * p).unsigned_abs() as u32;
                let pow4 = BigInt::from(4).pow(e);
                let scale = if four_pow * p >= 0 {
                    Rational::from_integer(pow4)
                } else {
                    Rational::new(BigInt::one(), pow4)
                };
                coeff = coeff.scale(&scale);
            }
            if pi_pow != 0 {
                coeff = coeff.mul_pi_power(pi_pow * p);
            }
            out.add_term(p, coeff);
        }
        out
    }

    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Text => self.render_plain(false),
            RenderFormat::Latex => self.render_plain(true),
            RenderFormat::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("laurent json")
            }
        }
    }

    fn render_plain(&self, latex: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let var = match (self.variable, latex) {
            (Variable::Tau2, true) => r"\tau_2".to_string(),
            (v, _) => v.symbol().to_string(),
        };
        let mut pieces: Vec<(bool, String)> = Vec::new(); // (negative, body)
        for (&p, c) in self.coeffs.iter().rev() {
            let monos: Vec<(&ZetaMonomial, &Rational)> = c.terms().collect();
            if monos.len() == 1 {
                let (m, r) = monos[0];
                let neg = r < &Rational::zero();
                let abs = if neg { -r.clone() } else { r.clone() };
                let body = join_factors(render_term(&abs, m, latex), power_factor(&var, p, latex));
                pieces.push((neg, body));
            } else {
                let mut inner = String::new();
                for (i, (m, r)) in monos.iter().enumerate() {
                    let neg = *r < &Rational::zero();
                    let abs = if neg { -(*r).clone() } else { (*r).clone() };
                    let t = render_term(&abs, m, latex);
                    if i == 0 {
                        if neg {
                            inner.push('-');
                        }
                    } else {
                        inner.push_str(if neg { " - " } else { " + " });
                    }
                    inner.push_str(&t);
                }
                let wrapped = if latex {
                    format!(r"\left({inner}\right)")
                } else {
                    format!("({inner})")
                };
                pieces.push((false, join_factors(wrapped, power_factor(&var, p, latex))));
            }
        }
        let mut out = String::new();
        for (i, (neg, body)) in pieces.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(body);
        }
        out
    }

    pub fn to_json(&self) -> LaurentJson {
        let mut terms = Vec::new();
        for (&p, c) in self.coeffs.iter().rev() {
            let mut rational = Rational::zero();
            let mut monomials = Vec::new();
            for (m, r) in c.terms() {
                if m.is_unit() {
                    rational = r.clone();
                } else {
                    monomials.push(MonomialJson {
                        odd: m.odd_factors().to_vec(),
                        pi_pow: m.pi_power(),
                        double: m.double_factors().iter().map(|&(a, b)| [a, b]).collect(),
                        coeff: rat_string(r),
                    });
                }
            }
            terms.push(TermJson {
                power: p,
                coeff: CoeffJson { rational: rat_string(&rational), monomials },
            });
        }
        LaurentJson {
            w: self.weight as i64,
            variable: self.variable,
            terms,
        }
    }

    pub fn from_json(json: &LaurentJson) -> Result<Self> {
        if json.w < 0 {
            return Err(Error::Domain("negative weight in laurent json".into()));
        }
        let mut poly = Self::new(json.variable, json.w as u32);
        for term in &json.terms {
            let mut coeff = SymbolicConstant::from_rational(rat_parse(&term.coeff.rational)?);
            for m in &term.coeff.monomials {
                let double: Vec<(u32, u32)> = m.double.iter().map(|p| (p[0], p[1])).collect();
                let mono = ZetaMonomial::try_new(&m.odd, m.pi_pow, &double)?;
                coeff = coeff.add(&SymbolicConstant::from_monomial(mono, rat_parse(&m.coeff)?));
            }
            poly.add_term(term.power, coeff);
        }
        Ok(poly)
    }
}

fn join_factors(coeff: String, var: String) -> String {
    match (coeff.as_str(), var.as_str()) {
        (_, "") => coeff,
        ("1", _) => var,
        _ => format!("{coeff} {var}"),
    }
}

fn power_factor(var: &str, p: i64, latex: bool) -> String {
    match p {
        0 => String::new(),
        1 => var.to_string(),
        _ if latex => format!("{var}^{{{p}}}"),
        _ => format!("{var}^{p}"),
    }
}

fn render_term(abs: &Rational, m: &ZetaMonomial, latex: bool) -> String {
    let mut factors: Vec<String> = Vec::new();
    let one = Rational::one();
    if abs != &one || m.is_unit() {
        if latex && !abs.denom().is_one() {
            factors.push(format!(r"\frac{{{}}}{{{}}}", abs.numer(), abs.denom()));
        } else {
            factors.push(rat_string(abs));
        }
    }
    let pi = if latex { r"\pi" } else { "pi" };
    match m.pi_power() {
        0 => {}
        1 => factors.push(pi.to_string()),
        k if latex => factors.push(format!("{pi}^{{{k}}}")),
        k => factors.push(format!("{pi}^{k}")),
    }
    let zeta = |args: String| {
        if latex {
            format!(r"\zeta({args})")
        } else {
            format!("zeta({args})")
        }
    };
    let mut push_with_multiplicity = |base: String, count: usize| {
        if count == 1 {
            factors.push(base);
        } else if latex {
            factors.push(format!("{base}^{{{count}}}"));
        } else {
            factors.push(format!("{base}^{count}"));
        }
    };
    let mut i = 0;
    let odds = m.odd_factors();
    while i < odds.len() {
        let j = odds[i..].iter().take_while(|&&n| n == odds[i]).count();
        push_with_multiplicity(zeta(odds[i].to_string()), j);
        i += j;
    }
    let mut i = 0;
    let doubles = m.double_factors();
    while i < doubles.len() {
        let j = doubles[i..].iter().take_while(|&&d| d == doubles[i]).count();
        let (a, b) = doubles[i];
        push_with_multiplicity(zeta(format!("{a},{b}")), j);
        i += j;
    }
    factors.join(if latex { r" \, " } else { " " })
}

/// JSON schema for rendered Laurent polynomials:
/// `{"w": int, "variable": "u|y|tau2", "terms": [{"power": int, "coeff":
/// {"rational": "p/q", "monomials": [{"odd": [..], "pi_pow": int,
/// "double": [[a,b],..], "coeff": "p/q"}]}}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaurentJson {
    pub w: i64,
    pub variable: Variable,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub power: i64,
    pub coeff: CoeffJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffJson {
    pub rational: String,
    #[serde(default)]
    pub monomials: Vec<MonomialJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialJson {
    #[serde(default)]
    pub odd: Vec<u32>,
    #[serde(default)]
    pub pi_pow: i64,
    #[serde(default)]
    pub double: Vec<[u32; 2]>,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn c211_u_top() -> LaurentPolynomial {
        let mut p = LaurentPolynomial::new(Variable::U, 4);
        p.add_term(4, SymbolicConstant::from_rational(rat(1, 1814400)));
        p
    }

    #[test]
    fn convert_u_to_y_rescales_by_powers_of_four() {
        let p = c211_u_top().convert_variable(Variable::Y);
        assert_eq!(p.coefficient(4), SymbolicConstant::from_rational(rat(2, 14175)));
        // round trip is the identity
        assert_eq!(p.convert_variable(Variable::U), c211_u_top());
    }

    #[test]
    fn convert_zero_polynomial() {
        let p = LaurentPolynomial::new(Variable::U, 4);
        let q = p.convert_variable(Variable::Y);
        assert!(q.is_zero());
        assert_eq!(q.render(RenderFormat::Text), "0");
    }

    #[test]
    fn tau2_conversion_absorbs_pi() {
        let mut p = LaurentPolynomial::new(Variable::Y, 3);
        p.add_term(-2, SymbolicConstant::zeta(5).unwrap().scale(&rat(3, 4)));
        let q = p.convert_variable(Variable::Tau2);
        let m = ZetaMonomial::try_new(&[5], -2, &[]).unwrap();
        assert_eq!(q.coefficient(-2).coefficient(&m), rat(3, 4));
        assert_eq!(q.convert_variable(Variable::Y), p);
    }

    #[test]
    fn text_rendering_is_canonical() {
        let mut p = LaurentPolynomial::new(Variable::Y, 4);
        p.add_term(4, SymbolicConstant::from_rational(rat(2, 14175)));
        p.add_term(1, SymbolicConstant::zeta(3).unwrap().scale(&rat(1, 45)));
        let z3sq = SymbolicConstant::zeta(3)
            .unwrap()
            .mul(&SymbolicConstant::zeta(3).unwrap());
        p.add_term(-2, z3sq.scale(&rat(-1, 4)));
        let text = p.render(RenderFormat::Text);
        assert!(text.starts_with("2/14175 y^4"), "got {text}");
        assert!(text.contains("1/45 zeta(3) y"), "got {text}");
        assert!(text.contains("- 1/4 zeta(3)^2 y^-2"), "got {text}");
    }

    #[test]
    fn json_round_trip() {
        let mut p = LaurentPolynomial::new(Variable::U, 4);
        p.add_term(4, SymbolicConstant::from_rational(rat(1, 1814400)));
        p.add_term(-2, SymbolicConstant::zeta_double(3, 3).unwrap().scale(&rat(4, 1)));
        p.add_term(
            -2,
            SymbolicConstant::pi_power(6).scale(&rat(-14, 945)),
        );
        let json = p.render(RenderFormat::Json);
        let parsed: LaurentJson = serde_json::from_str(&json).unwrap();
        let back = LaurentPolynomial::from_json(&parsed).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn degree_span_check() {
        let mut p = LaurentPolynomial::new(Variable::U, 3);
        p.add_term(3, SymbolicConstant::from_rational(rat(1, 2)));
        p.add_term(-2, SymbolicConstant::from_rational(rat(1, 2)));
        assert!(p.check_degree_span().is_ok());
        p.add_term(4, SymbolicConstant::from_rational(rat(1, 2)));
        assert!(p.check_degree_span().is_err());
    }
}

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{GaussianRational, Monomial, Poly, VarSpace};

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn monomial_text(m: &Monomial, space: &VarSpace) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(space.name(k).to_string()),
            _ => parts.push(format!("{}^{e}", space.name(k))),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Splits a coefficient into a sign and the text of its magnitude, `None`
/// when the magnitude is one and can be omitted in front of a monomial.
fn coefficient(c: &GaussianRational) -> (bool, Option<String>) {
    let (re, im) = (c.re(), c.im());
    if im.is_zero() {
        let mag = re.abs();
        let text = (!mag.is_one()).then(|| rational(&mag));
        (re.is_negative(), text)
    } else if re.is_zero() {
        let mag = im.abs();
        let text = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rational(&mag))
        };
        (im.is_negative(), Some(text))
    } else {
        let sign = if im.is_negative() { "-" } else { "+" };
        let mag = im.abs();
        let imag = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rational(&mag))
        };
        (false, Some(format!("({} {sign} {imag})", rational(re))))
    }
}

/// Canonical text: terms in descending graded-reverse-lex order, unit
/// coefficients omitted, conjugates printed with the `~` sigil.
pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let space = p.space();
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let (neg, mag) = coefficient(c);
        let body = match (m.is_one(), mag) {
            (true, Some(t)) => t,
            (true, None) => "1".into(),
            (false, Some(t)) => format!("{t}*{}", monomial_text(m, space)),
            (false, None) => monomial_text(m, space),
        };
        match (idx, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

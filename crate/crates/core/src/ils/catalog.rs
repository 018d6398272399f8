//! Normal forms of isolated line singularities and Levi-flat quadrics.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::Germ;
use crate::algebra::{GaussianRational, Poly, VarSpace};
use crate::error::{Error, Result};
use crate::hermitian::{make_hermitian, re_part, HermitianPoly};

/// A row of the isolated line singularity table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    /// `y1² + … + yn²`
    AInf,
    /// `x·y1² + y2² + … + yn²`
    DInf,
    /// `x^k·y1² + y1³ + y2² + …`, `k ≥ 2`
    J { k: u32 },
    /// `x²·y1² + y1^k + y2² + …`, `k ≥ 4`
    TK2 { k: u32 },
    /// `x·y1³ + x^(k+2)·y1² + y2² + …`, `k ≥ 1`
    Z { k: u32 },
    /// `x³·y1² + y1⁴ + y2² + …`
    W1,
    /// `x·y1·y2 + y1^q + y2^r + y3² + …`, `q ≥ r ≥ 3`
    TQR { q: u32, r: u32 },
    /// `x^k·y1² + y1³ + x·y2² + y3² + …`, `k ≥ 2`
    Q { k: u32 },
    /// `x²·y1² + y1²·y2 + y3² + …`
    S1,
}

impl NormalForm {
    /// Every family at its smallest legal parameters.
    pub const SMALLEST: [NormalForm; 9] = [
        NormalForm::AInf,
        NormalForm::DInf,
        NormalForm::J { k: 2 },
        NormalForm::TK2 { k: 4 },
        NormalForm::Z { k: 1 },
        NormalForm::W1,
        NormalForm::TQR { q: 3, r: 3 },
        NormalForm::Q { k: 2 },
        NormalForm::S1,
    ];

    /// Short tag used on the command line.
    pub fn tag(&self) -> &'static str {
        match self {
            NormalForm::AInf => "A",
            NormalForm::DInf => "D",
            NormalForm::J { .. } => "J",
            NormalForm::TK2 { .. } => "T2",
            NormalForm::Z { .. } => "Z",
            NormalForm::W1 => "W1",
            NormalForm::TQR { .. } => "Tqr",
            NormalForm::Q { .. } => "Q",
            NormalForm::S1 => "S1",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, u32)> {
        match *self {
            NormalForm::J { k }
            | NormalForm::TK2 { k }
            | NormalForm::Z { k }
            | NormalForm::Q { k } => vec![("k", k)],
            NormalForm::TQR { q, r } => vec![("q", q), ("r", r)],
            _ => Vec::new(),
        }
    }

    /// Smallest `n` for which the row makes sense.
    pub fn min_n(&self) -> usize {
        match self {
            NormalForm::TQR { .. } | NormalForm::Q { .. } | NormalForm::S1 => 2,
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::Parameter(what));
        match *self {
            NormalForm::J { k } if k < 2 => bad(format!("J needs k >= 2, got {k}")),
            NormalForm::TK2 { k } if k < 4 => bad(format!("T2 needs k >= 4, got {k}")),
            NormalForm::Z { k } if k < 1 => bad(format!("Z needs k >= 1, got {k}")),
            NormalForm::TQR { q, r } if !(q >= r && r >= 3) => {
                bad(format!("Tqr needs q >= r >= 3, got q={q}, r={r}"))
            }
            NormalForm::Q { k } if k < 2 => bad(format!("Q needs k >= 2, got {k}")),
            _ => Ok(()),
        }
    }

    /// Exponent vectors `(x, y1, y2, ...)` of the row's special terms, before
    /// the trailing squares.
    fn head(&self) -> (Vec<Vec<u32>>, usize) {
        match *self {
            NormalForm::AInf => (vec![], 1),
            NormalForm::DInf => (vec![vec![1, 2]], 2),
            NormalForm::J { k } => (vec![vec![k, 2], vec![0, 3]], 2),
            NormalForm::TK2 { k } => (vec![vec![2, 2], vec![0, k]], 2),
            NormalForm::Z { k } => (vec![vec![1, 3], vec![k + 2, 2]], 2),
            NormalForm::W1 => (vec![vec![3, 2], vec![0, 4]], 2),
            NormalForm::TQR { q, r } => (vec![vec![1, 1, 1], vec![0, q], vec![0, 0, r]], 3),
            NormalForm::Q { k } => (vec![vec![k, 2], vec![0, 3], vec![1, 0, 2]], 3),
            NormalForm::S1 => (vec![vec![2, 2], vec![0, 2, 1]], 3),
        }
    }

    /// Exponent vectors of every term for `n` variables `y`.
    pub(crate) fn support(&self, n: usize) -> Vec<Vec<u32>> {
        let (head, first_square) = self.head();
        let mut out: Vec<Vec<u32>> = head
            .into_iter()
            .map(|mut e| {
                e.resize(n + 1, 0);
                e
            })
            .collect();
        for j in first_square..=n {
            let mut e = vec![0; n + 1];
            e[j] = 2;
            out.push(e);
        }
        out
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NormalForm::AInf => write!(f, "A_∞"),
            NormalForm::DInf => write!(f, "D_∞"),
            NormalForm::J { k } => write!(f, "J_{{{k},∞}}"),
            NormalForm::TK2 { k } => write!(f, "T_{{∞,{k},2}}"),
            NormalForm::Z { k } => write!(f, "Z_{{{k},∞}}"),
            NormalForm::W1 => write!(f, "W_{{1,∞}}"),
            NormalForm::TQR { q, r } => write!(f, "T_{{∞,{q},{r}}}"),
            NormalForm::Q { k } => write!(f, "Q_{{{k},∞}}"),
            NormalForm::S1 => write!(f, "S_{{1,∞}}"),
        }
    }
}

/// Splits `"J k=2 n=3"` (or `"J,k=2,n=3"`) into a tag and `key=value` pairs.
fn tokens(s: &str) -> Result<(String, Vec<(String, String)>)> {
    let mut parts = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty());
    let tag = parts
        .next()
        .ok_or_else(|| Error::Parameter("empty catalog specification".into()))?
        .to_string();
    let mut kv = Vec::new();
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::Parameter(format!("expected key=value, found `{p}`")))?;
        kv.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok((tag, kv))
}

fn take_u32(kv: &mut Vec<(String, String)>, key: &str) -> Result<Option<u32>> {
    match kv.iter().position(|(k, _)| k == key) {
        None => Ok(None),
        Some(i) => {
            let (_, v) = kv.remove(i);
            v.parse()
                .map(Some)
                .map_err(|_| Error::Parameter(format!("`{key}` must be a nonnegative integer, got `{v}`")))
        }
    }
}

fn need(v: Option<u32>, tag: &str, key: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Parameter(format!("{tag} needs `{key}=`")))
}

fn no_leftovers(kv: &[(String, String)]) -> Result<()> {
    match kv.first() {
        Some((k, _)) => Err(Error::Parameter(format!("unknown parameter `{k}`"))),
        None => Ok(()),
    }
}

impl NormalForm {
    /// Parses a specification such as `"J k=2 n=3"`, returning the row and
    /// the requested `n` (if any).
    pub fn parse_spec(s: &str) -> Result<(NormalForm, Option<usize>)> {
        let (tag, mut kv) = tokens(s)?;
        let n = take_u32(&mut kv, "n")?.map(|n| n as usize);
        let k = take_u32(&mut kv, "k")?;
        let form = match tag.to_ascii_lowercase().as_str() {
            "a" | "ainf" | "a_inf" => NormalForm::AInf,
            "d" | "dinf" | "d_inf" => NormalForm::DInf,
            "j" => NormalForm::J { k: need(k, "J", "k")? },
            "t2" | "tk2" => NormalForm::TK2 { k: need(k, "T2", "k")? },
            "z" => NormalForm::Z { k: need(k, "Z", "k")? },
            "w1" => NormalForm::W1,
            "tqr" => {
                let q = need(take_u32(&mut kv, "q")?, "Tqr", "q")?;
                let r = need(take_u32(&mut kv, "r")?, "Tqr", "r")?;
                NormalForm::TQR { q, r }
            }
            "q" => NormalForm::Q { k: need(k, "Q", "k")? },
            "s1" => NormalForm::S1,
            other => return Err(Error::NotInCatalog(format!("unknown tag `{other}`"))),
        };
        if k.is_some() && form.params().iter().all(|(name, _)| *name != "k") {
            return Err(Error::Parameter(format!("{} takes no `k`", form.tag())));
        }
        no_leftovers(&kv)?;
        form.validate()?;
        Ok((form, n))
    }

    /// `"J k=2"`, the inverse of [`NormalForm::parse_spec`] without `n`.
    pub fn spec(&self) -> String {
        let mut s = self.tag().to_string();
        for (k, v) in self.params() {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

impl FromStr for NormalForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(NormalForm::parse_spec(s)?.0)
    }
}

/// The table polynomial of `form` in `x, y1, …, yn`.
pub fn build_normal_form(form: NormalForm, n: usize) -> Result<Germ> {
    form.validate()?;
    if n < form.min_n() {
        return Err(Error::Parameter(format!(
            "{form} needs n >= {}, got {n}",
            form.min_n()
        )));
    }
    let space = VarSpace::germ(n);
    let one = GaussianRational::from_integer(1);
    let poly = Poly::from_terms(
        &space,
        form.support(n)
            .into_iter()
            .map(|e| (crate::algebra::Monomial::from_exponents(e), one.clone())),
    );
    Germ::new(&poly)
}

/// A row of the Levi-flat quadric table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Quadric {
    /// `Re(z1² + … + zk²)`, written `Q_{0,2k}`.
    Q0 { k: usize },
    /// `z1² + 2·z1·z̄1 + z̄1²`
    Q11,
    /// `z1² + 2λ·z1·z̄1 + z̄1²`
    Q12 { lambda: BigRational },
    /// `(z1 + z̄1)(z2 + z̄2)`
    Q22,
    /// `z1·z̄2 − z̄1·z2`, made real by the factor `i`.
    Q24,
}

impl Quadric {
    /// All five rows with default parameters (`k = 2`, `λ = 1/2`).
    pub fn all_defaults() -> Vec<Quadric> {
        vec![
            Quadric::Q0 { k: 2 },
            Quadric::Q11,
            Quadric::Q12 {
                lambda: BigRational::new(1.into(), 2.into()),
            },
            Quadric::Q22,
            Quadric::Q24,
        ]
    }

    pub fn min_n(&self) -> usize {
        match self {
            Quadric::Q0 { k } => *k,
            Quadric::Q11 | Quadric::Q12 { .. } => 1,
            Quadric::Q22 | Quadric::Q24 => 2,
        }
    }

    /// The singular-set column of the table.
    pub fn singular_set(&self) -> &'static str {
        match self {
            Quadric::Q0 { .. } => "C^{n-k}",
            Quadric::Q11 => "empty",
            Quadric::Q12 { .. } => "C^{n-1}",
            Quadric::Q22 => "R^2 x C^{n-2}",
            Quadric::Q24 => "C^{n-2}",
        }
    }

    /// Parses `"Q0 k=2"`, `"Q11"`, `"Q12 lambda=1/3"`, `"Q22"`, `"Q24"`, with
    /// an optional `n=`.
    pub fn parse_spec(s: &str) -> Result<(Quadric, Option<usize>)> {
        let (tag, mut kv) = tokens(s)?;
        let n = take_u32(&mut kv, "n")?.map(|n| n as usize);
        let q = match tag.to_ascii_lowercase().as_str() {
            "q0" => {
                let k = need(take_u32(&mut kv, "k")?, "Q0", "k")? as usize;
                if k == 0 {
                    return Err(Error::Parameter("Q0 needs k >= 1".into()));
                }
                Quadric::Q0 { k }
            }
            "q11" => Quadric::Q11,
            "q12" => {
                let lambda = match kv.iter().position(|(k, _)| k == "lambda") {
                    Some(i) => {
                        let (_, v) = kv.remove(i);
                        v.parse::<BigRational>().map_err(|_| {
                            Error::Parameter(format!("`lambda` must be a rational, got `{v}`"))
                        })?
                    }
                    None => BigRational::new(1.into(), 2.into()),
                };
                Quadric::Q12 { lambda }
            }
            "q22" => Quadric::Q22,
            "q24" => Quadric::Q24,
            other => return Err(Error::NotInCatalog(format!("unknown quadric `{other}`"))),
        };
        no_leftovers(&kv)?;
        Ok((q, n))
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quadric::Q0 { k } => write!(f, "Q_{{0,{}}}", 2 * k),
            Quadric::Q11 => write!(f, "Q_{{1,1}}"),
            Quadric::Q12 { lambda } => write!(f, "Q^{{{lambda}}}_{{1,2}}"),
            Quadric::Q22 => write!(f, "Q_{{2,2}}"),
            Quadric::Q24 => write!(f, "Q_{{2,4}}"),
        }
    }
}

/// A built quadric together with its table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricEntry {
    pub quadric: Quadric,
    pub n: usize,
    pub poly: HermitianPoly,
    pub singular_set: &'static str,
}

/// The table quadric in `z1, …, zn`, normalized to be real-valued.
pub fn build_quadric(quadric: &Quadric, n: usize) -> Result<QuadricEntry> {
    if n < quadric.min_n() {
        return Err(Error::Parameter(format!(
            "{quadric} needs n >= {}, got {n}",
            quadric.min_n()
        )));
    }
    let space = VarSpace::quadric_hermitian(n);
    let z = |k: usize| Poly::var(&space, k);
    let zb = |k: usize| Poly::var(&space, k + n);
    let poly = match quadric {
        Quadric::Q0 { k } => {
            let mut h = Poly::zero(&space);
            for j in 0..*k {
                h = &h + &z(j).pow(2);
            }
            return Ok(QuadricEntry {
                quadric: quadric.clone(),
                n,
                poly: re_part(&h)?,
                singular_set: quadric.singular_set(),
            });
        }
        Quadric::Q11 => &(&z(0).pow(2) + &(&z(0) * &zb(0)).scale(&2.into())) + &zb(0).pow(2),
        Quadric::Q12 { lambda } => {
            if lambda.is_zero() {
                return Err(Error::Parameter("lambda must be nonzero".into()));
            }
            let two_lambda = GaussianRational::real(lambda * BigRational::from_integer(2.into()));
            &(&z(0).pow(2) + &(&z(0) * &zb(0)).scale(&two_lambda)) + &zb(0).pow(2)
        }
        Quadric::Q22 => &(&z(0) + &zb(0)) * &(&z(1) + &zb(1)),
        Quadric::Q24 => &(&z(0) * &zb(1)) - &(&zb(0) * &z(1)),
    };
    Ok(QuadricEntry {
        quadric: quadric.clone(),
        n,
        poly: make_hermitian(&poly)?,
        singular_set: quadric.singular_set(),
    })
}

/// Quadric models for a Levi-flat hypersurface singular along a complex line
/// in `C^n`: `[Q_{0,2}, Q_{2,4}]` for `n = 3`, `[Q_{0,2(n−1)}]` for `n ≥ 4`.
pub fn quadric_models_for_line(n: usize) -> Result<Vec<QuadricEntry>> {
    match n {
        0..=2 => Err(Error::Precondition(format!("needs n >= 3, got {n}"))),
        3 => Ok(vec![
            build_quadric(&Quadric::Q0 { k: 1 }, 3)?,
            build_quadric(&Quadric::Q24, 3)?,
        ]),
        _ => Ok(vec![build_quadric(&Quadric::Q0 { k: n - 1 }, n)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::print_poly;
    use crate::hermitian::Unit;

    #[test]
    fn table_rows() {
        let j = build_normal_form(NormalForm::J { k: 2 }, 3).unwrap();
        assert_eq!(print_poly(j.poly()), "x^2*y1^2 + y1^3 + y2^2 + y3^2");
        let t = build_normal_form(NormalForm::TQR { q: 3, r: 3 }, 3).unwrap();
        assert_eq!(print_poly(t.poly()), "y1^3 + x*y1*y2 + y2^3 + y3^2");
        let s = build_normal_form(NormalForm::S1, 3).unwrap();
        assert_eq!(print_poly(s.poly()), "x^2*y1^2 + y1^2*y2 + y3^2");
        let q = build_normal_form(NormalForm::Q { k: 2 }, 3).unwrap();
        assert_eq!(print_poly(q.poly()), "x^2*y1^2 + y1^3 + x*y2^2 + y3^2");
        let z = build_normal_form(NormalForm::Z { k: 1 }, 2).unwrap();
        assert_eq!(print_poly(z.poly()), "x^3*y1^2 + x*y1^3 + y2^2");
    }

    #[test]
    fn constraints_are_enforced() {
        assert!(matches!(
            build_normal_form(NormalForm::TQR { q: 3, r: 2 }, 3),
            Err(Error::Parameter(_))
        ));
        assert!(build_normal_form(NormalForm::J { k: 1 }, 3).is_err());
        assert!(build_normal_form(NormalForm::TK2 { k: 3 }, 3).is_err());
        assert!(build_normal_form(NormalForm::Q { k: 1 }, 3).is_err());
        assert!(build_normal_form(NormalForm::S1, 1).is_err());
    }

    #[test]
    fn specs_round_trip() {
        assert_eq!(
            NormalForm::parse_spec("J k=2 n=3").unwrap(),
            (NormalForm::J { k: 2 }, Some(3))
        );
        assert_eq!(
            NormalForm::parse_spec("Tqr,q=4,r=3").unwrap(),
            (NormalForm::TQR { q: 4, r: 3 }, None)
        );
        for f in NormalForm::SMALLEST {
            assert_eq!(f.spec().parse::<NormalForm>().unwrap(), f);
        }
        assert!(matches!(NormalForm::parse_spec("E6"), Err(Error::NotInCatalog(_))));
        assert!(matches!(NormalForm::parse_spec("J"), Err(Error::Parameter(_))));
        assert!(matches!(NormalForm::parse_spec("A k=2"), Err(Error::Parameter(_))));
        assert!(matches!(NormalForm::parse_spec("J k=2 m=1"), Err(Error::Parameter(_))));
    }

    #[test]
    fn quadrics() {
        let q24 = build_quadric(&Quadric::Q24, 3).unwrap();
        assert_eq!(q24.poly.normalization(), Unit::I);
        let q12 = build_quadric(
            &Quadric::Q12 {
                lambda: BigRational::new(1.into(), 3.into()),
            },
            2,
        )
        .unwrap();
        assert_eq!(print_poly(q12.poly.poly()), "z1^2 + 2/3*z1*~z1 + ~z1^2");
        let q0 = build_quadric(&Quadric::Q0 { k: 2 }, 3).unwrap();
        assert_eq!(
            print_poly(q0.poly.poly()),
            "1/2*z1^2 + 1/2*z2^2 + 1/2*~z1^2 + 1/2*~z2^2"
        );
        assert_eq!(Quadric::Q0 { k: 2 }.to_string(), "Q_{0,4}");
        assert_eq!(
            Quadric::parse_spec("Q12 lambda=2/5 n=4").unwrap(),
            (
                Quadric::Q12 {
                    lambda: BigRational::new(2.into(), 5.into())
                },
                Some(4)
            )
        );
    }

    #[test]
    fn models_for_line() {
        let three: Vec<String> = quadric_models_for_line(3)
            .unwrap()
            .iter()
            .map(|e| e.quadric.to_string())
            .collect();
        assert_eq!(three, ["Q_{0,2}", "Q_{2,4}"]);
        let four = quadric_models_for_line(4).unwrap();
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].quadric.to_string(), "Q_{0,6}");
        assert!(matches!(quadric_models_for_line(2), Err(Error::Precondition(_))));
    }
}

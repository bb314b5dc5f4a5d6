use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `z^α`.
///
/// Ordered by degree, then so that `z_1` comes first: `z_1² < z_1 z_2 < z_2²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multidx(pub Vec<u32>);

impl Multidx {
    pub fn zero(nvars: usize) -> Self {
        Multidx(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        Multidx(v)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn plus(&self, other: &Multidx) -> Multidx {
        Multidx(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Multidx {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Multidx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors in `nvars` variables of degree exactly `n`, in
/// [`Multidx`] order.
pub fn monomials_of_degree(nvars: usize, n: usize) -> Vec<Multidx> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Multidx>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Multidx(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(nvars, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if n == 0 {
            out.push(Multidx(vec![]));
        }
        return out;
    }
    rec(nvars, n as u32, &mut Vec::new(), &mut out);
    out
}

/// A polynomial in `nvars` complex variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Multidx, Complex64>,
}

/// One term of the polynomial input format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exponents: Vec<u32>,
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        Self::from_terms(nvars, [(Multidx::zero(nvars), c)]).expect("zero multi-index fits")
    }

    /// `z_i` (zero-based `i`).
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Multidx::unit(nvars, i), Complex64::new(1.0, 0.0))])
            .expect("unit multi-index fits")
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Multidx, Complex64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (a, c) in terms {
            if a.nvars() != nvars {
                return Err(Error::InvalidParams(format!(
                    "exponent vector of length {} in {nvars} variables",
                    a.nvars()
                )));
            }
            p.add_term(a, c);
        }
        Ok(p)
    }

    pub fn from_input(nvars: usize, terms: &[PolyTerm]) -> Result<Self> {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|t| (Multidx(t.exponents.clone()), Complex64::new(t.re, t.im))),
        )
    }

    pub fn to_input(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .map(|(a, c)| PolyTerm {
                exponents: a.0.clone(),
                re: c.re,
                im: c.im,
            })
            .collect()
    }

    /// Parses expressions like `1 + z`, `1 + z1 + z1*z2`, `2 z1^2 - 0.5i z2`.
    /// A bare `z` is `z1`.
    pub fn parse(nvars: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParams(format!("cannot parse polynomial `{text}`: {why}"));
        let mut terms = Vec::new();
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(Self::zero(nvars));
        }
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !cleaned[..i].ends_with(['e', 'E', '^']) {
                chunks.push(&cleaned[start..i]);
                start = i;
            }
        }
        chunks.push(&cleaned[start..]);
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-1.0, rest),
                None => (1.0, chunk.strip_prefix('+').unwrap_or(chunk)),
            };
            if body.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = Complex64::new(sign, 0.0);
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*').filter(|f| !f.is_empty()) {
                if let Some(var) = factor.strip_prefix('z') {
                    let (idx, pow) = match var.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad("bad power"))?),
                        None => (var, 1),
                    };
                    let idx = idx.trim_start_matches('_');
                    let i = if idx.is_empty() {
                        1
                    } else {
                        idx.parse::<usize>().map_err(|_| bad("bad variable index"))?
                    };
                    if i == 0 || i > nvars {
                        return Err(bad("variable index out of range"));
                    }
                    exps[i - 1] += pow;
                } else if let Some(num) = factor.strip_suffix('i') {
                    let v = if num.is_empty() { 1.0 } else { num.parse::<f64>().map_err(|_| bad("bad number"))? };
                    coeff *= Complex64::new(0.0, v);
                } else {
                    // allow `2z1` without an explicit `*`
                    match factor.find('z') {
                        Some(pos) if pos > 0 => {
                            let v: f64 = factor[..pos].parse().map_err(|_| bad("bad number"))?;
                            coeff *= v;
                            let sub = Self::parse(nvars, &factor[pos..])?;
                            let (a, _) = sub.terms.into_iter().next().ok_or_else(|| bad("bad factor"))?;
                            for (e, x) in exps.iter_mut().zip(a.0) {
                                *e += x;
                            }
                        }
                        _ => coeff *= factor.parse::<f64>().map_err(|_| bad("bad number"))?,
                    }
                }
            }
            terms.push((Multidx(exps), coeff));
        }
        Self::from_terms(nvars, terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|α|` in the support; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Multidx::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, a: &Multidx) -> Complex64 {
        self.terms.get(a).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multidx, Complex64)> {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn add_term(&mut self, a: Multidx, c: Complex64) {
        let slot = self.terms.entry(a.clone()).or_default();
        *slot += c;
        if *slot == Complex64::default() {
            self.terms.remove(&a);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, c) in self.terms() {
            for (b, d) in other.terms() {
                out.add_term(a.plus(b), c * d);
            }
        }
        out
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms()
            .map(|(a, c)| {
                a.0.iter()
                    .zip(z)
                    .fold(c, |acc, (&k, &zi)| acc * zi.powu(k))
            })
            .sum()
    }

    /// `φ = Σ_n φ_n` with `φ_n` homogeneous of degree `n`.
    pub fn homogeneous_decompose(&self) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (a, c) in self.terms() {
            out.entry(a.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(a.clone(), c);
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_decompose().len() <= 1
    }

    /// `(Γ_ζ φ)(z) = φ(ζ z)`: the degree-`n` part is scaled by `ζⁿ`.
    pub fn circle_action(&self, zeta: Complex64) -> Result<Polynomial> {
        check_unimodular(zeta)?;
        let mut out = Polynomial::zero(self.nvars);
        for (a, c) in self.terms() {
            out.add_term(a.clone(), c * unimodular_pow(zeta, a.degree()));
        }
        Ok(out)
    }

    /// Largest coefficientwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Polynomial) -> f64 {
        let mut diff = self.clone();
        for (a, c) in other.terms() {
            diff.add_term(a.clone(), -c);
        }
        diff.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(a, c)| {
                let mono: Vec<String> = a
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("z{}", i + 1) } else { format!("z{}^{k}", i + 1) })
                    .collect();
                let coeff = if c.im == 0.0 { format!("{}", c.re) } else { format!("({c})") };
                if mono.is_empty() {
                    coeff
                } else if c == Complex64::new(1.0, 0.0) {
                    mono.join("*")
                } else {
                    format!("{coeff}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn check_unimodular(zeta: Complex64) -> Result<()> {
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        Err(Error::NotUnimodular(format!("{zeta}")))
    } else {
        Ok(())
    }
}

/// `ζⁿ` for unimodular `ζ`, via the angle so roots of unity stay on the
/// circle to machine precision.
pub(crate) fn unimodular_pow(zeta: Complex64, n: usize) -> Complex64 {
    if zeta == Complex64::new(1.0, 0.0) || n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    // exact for ±1 and ±i
    if zeta.re == 0.0 || zeta.im == 0.0 {
        return zeta.powu(n as u32);
    }
    let theta = (zeta.arg() * n as f64).rem_euclid(std::f64::consts::TAU);
    Complex64::from_polar(1.0, theta)
}

/// `e^{2πik/m}` with the four axis points exact.
pub fn root_of_unity(k: i64, m: u32) -> Complex64 {
    let m = m.max(1) as i64;
    let k = k.rem_euclid(m);
    if 4 * k % m == 0 {
        return match 4 * k / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ordering_of_monomials() {
        let m = monomials_of_degree(2, 2);
        assert_eq!(m, [Multidx(vec![2, 0]), Multidx(vec![1, 1]), Multidx(vec![0, 2])]);
        assert!(Multidx(vec![0, 1]) < Multidx(vec![2, 0]));
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 5), [Multidx(vec![5])]);
    }

    #[test]
    fn parse_forms() {
        let p = Polynomial::parse(2, "1 + z1 + z1*z2").unwrap();
        assert_eq!(p.terms().count(), 3);
        assert_eq!(p.coefficient(&Multidx(vec![1, 1])), c(1.0, 0.0));
        let q = Polynomial::parse(1, "1+z").unwrap();
        assert_eq!(q.degree(), 1);
        let r = Polynomial::parse(2, "2z1^2 - 0.5i*z2 + 3").unwrap();
        assert_eq!(r.coefficient(&Multidx(vec![2, 0])), c(2.0, 0.0));
        assert_eq!(r.coefficient(&Multidx(vec![0, 1])), c(0.0, -0.5));
        assert_eq!(r.coefficient(&Multidx(vec![0, 0])), c(3.0, 0.0));
        assert!(Polynomial::parse(1, "z2").is_err());
        assert!(Polynomial::parse(1, "1 + + z").is_err());
    }

    #[test]
    fn decompose_examples() {
        let p = Polynomial::parse(2, "1 + z1 + z1*z2").unwrap();
        let d = p.homogeneous_decompose();
        assert_eq!(d.keys().copied().collect::<Vec<_>>(), [0, 1, 2]);
        assert_eq!(d[&2], Polynomial::parse(2, "z1*z2").unwrap());
        let h = Polynomial::parse(2, "z1^2 + z2^2").unwrap();
        assert_eq!(h.homogeneous_decompose().len(), 1);
        assert!(Polynomial::zero(2).homogeneous_decompose().is_empty());
    }

    #[test]
    fn circle_action_examples() {
        let p = Polynomial::parse(2, "1 + z1 + z1*z2").unwrap();
        let q = p.circle_action(c(0.0, 1.0)).unwrap();
        let expect = Polynomial::from_terms(
            2,
            [
                (Multidx(vec![0, 0]), c(1.0, 0.0)),
                (Multidx(vec![1, 0]), c(0.0, 1.0)),
                (Multidx(vec![1, 1]), c(-1.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(q, expect);
        assert_eq!(p.circle_action(c(1.0, 0.0)).unwrap(), p);

        let cube = Polynomial::parse(2, "z1^3 + 2*z1*z2^2").unwrap();
        let theta = 0.7;
        let zeta = Complex64::from_polar(1.0, theta);
        let rotated = cube.circle_action(zeta).unwrap();
        let scaled = Polynomial::from_terms(2, cube.terms().map(|(a, k)| (a.clone(), k * Complex64::from_polar(1.0, 3.0 * theta)))).unwrap();
        assert!(rotated.max_abs_diff(&scaled) < 1e-14);

        assert!(matches!(p.circle_action(c(1.1, 0.0)), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(2, 8), c(0.0, 1.0));
        assert_eq!(root_of_unity(-2, 8), c(0.0, -1.0));
        let w = root_of_unity(1, 8);
        assert!((unimodular_pow(w, 8) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_and_mul() {
        let p = Polynomial::parse(2, "1 + z1").unwrap();
        let q = Polynomial::parse(2, "z2 - 1").unwrap();
        let pq = p.mul(&q);
        let z = [c(0.3, 0.1), c(-0.2, 0.5)];
        assert!((pq.eval(&z) - p.eval(&z) * q.eval(&z)).norm() < 1e-14);
    }
}

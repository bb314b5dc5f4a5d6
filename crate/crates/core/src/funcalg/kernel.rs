use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::poly::Multidx;

/// Which unitarily invariant kernel `K(z, w) = Σ c_n ⟨z, w⟩ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    /// `(1 - ⟨z, w⟩)^{-d}`: `c_n = C(n + d - 1, n)`.
    Hardy,
    /// `(1 - ⟨z, w⟩)^{-1}`: `c_n = 1`.
    DruryArveson,
    /// `c_n = 1 / (n + 1)`.
    Dirichlet,
    /// Explicit `c_0, c_1, …`.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    nvars: usize,
    family: KernelFamily,
}

impl KernelSpec {
    pub fn new(nvars: usize, family: KernelFamily) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidKernel("at least one variable is required".into()));
        }
        if let KernelFamily::Custom(c) = &family {
            if c.first() != Some(&1.0) {
                return Err(Error::InvalidKernel("c_0 must equal 1".into()));
            }
            if let Some((n, v)) = c.iter().enumerate().find(|(_, &v)| !(v > 0.0 && v.is_finite())) {
                return Err(Error::InvalidKernel(format!("c_{n} = {v} is not a positive real")));
            }
        }
        Ok(Self { nvars, family })
    }

    pub fn hardy(nvars: usize) -> Self {
        Self::new(nvars, KernelFamily::Hardy).expect("valid")
    }

    pub fn drury_arveson(nvars: usize) -> Self {
        Self::new(nvars, KernelFamily::DruryArveson).expect("valid")
    }

    pub fn dirichlet(nvars: usize) -> Self {
        Self::new(nvars, KernelFamily::Dirichlet).expect("valid")
    }

    /// Parses `hardy`, `drury_arveson`, `dirichlet`.
    pub fn by_name(name: &str, nvars: usize) -> Result<Self> {
        let family = match name {
            "hardy" => KernelFamily::Hardy,
            "drury_arveson" | "drury-arveson" | "da" => KernelFamily::DruryArveson,
            "dirichlet" => KernelFamily::Dirichlet,
            other => return Err(Error::InvalidKernel(format!("unknown kernel `{other}`"))),
        };
        Self::new(nvars, family)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn family(&self) -> &KernelFamily {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            KernelFamily::Hardy => "hardy",
            KernelFamily::DruryArveson => "drury_arveson",
            KernelFamily::Dirichlet => "dirichlet",
            KernelFamily::Custom(_) => "custom",
        }
    }

    /// Highest degree with a known coefficient.
    pub fn max_degree(&self) -> Option<usize> {
        match &self.family {
            KernelFamily::Custom(c) => Some(c.len() - 1),
            _ => None,
        }
    }

    /// `c_n`.
    pub fn coefficient(&self, n: usize) -> Result<f64> {
        Ok(match &self.family {
            KernelFamily::Hardy => binomial(n + self.nvars - 1, n),
            KernelFamily::DruryArveson => 1.0,
            KernelFamily::Dirichlet => 1.0 / (n as f64 + 1.0),
            KernelFamily::Custom(c) => *c.get(n).ok_or(Error::DegreeOverflow {
                degree: n,
                available: c.len(),
            })?,
        })
    }

    pub fn ensure_degree(&self, n: usize) -> Result<()> {
        self.coefficient(n).map(|_| ())
    }
}

/// `‖z^α‖ = √(α! / (|α|! c_{|α|}))`.
pub fn monomial_norm(kernel: &KernelSpec, alpha: &Multidx) -> Result<f64> {
    if alpha.nvars() != kernel.nvars() {
        return Err(Error::InvalidParams(format!(
            "multi-index in {} variables for a kernel in {}",
            alpha.nvars(),
            kernel.nvars()
        )));
    }
    let c = kernel.coefficient(alpha.degree())?;
    Ok((1.0 / (multinomial(alpha) * c)).sqrt())
}

/// `|α|! / α!` as a product of binomials.
pub fn multinomial(alpha: &Multidx) -> f64 {
    let mut total = 0usize;
    let mut out = 1.0;
    for &a in &alpha.0 {
        total += a as usize;
        out *= binomial(total, a as usize);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_norms() {
        let h = KernelSpec::hardy(1);
        for n in 0..10 {
            assert_eq!(monomial_norm(&h, &Multidx(vec![n])).unwrap(), 1.0);
        }
        let da = KernelSpec::drury_arveson(2);
        let v = monomial_norm(&da, &Multidx(vec![1, 1])).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
        let dir = KernelSpec::dirichlet(1);
        for n in 0..10u32 {
            let v = monomial_norm(&dir, &Multidx(vec![n])).unwrap();
            assert!((v - ((n + 1) as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn hardy_ball_coefficients() {
        let h = KernelSpec::hardy(2);
        assert_eq!(h.coefficient(0).unwrap(), 1.0);
        assert_eq!(h.coefficient(3).unwrap(), 4.0);
        // on the ball Hardy space ‖z_1 z_2‖² = 1!1!/(2!·3) = 1/6
        let v = monomial_norm(&h, &Multidx(vec![1, 1])).unwrap();
        assert!((v * v - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn custom_validation() {
        assert!(KernelSpec::new(1, KernelFamily::Custom(vec![1.0, 0.5])).is_ok());
        assert!(KernelSpec::new(1, KernelFamily::Custom(vec![2.0])).is_err());
        assert!(KernelSpec::new(1, KernelFamily::Custom(vec![1.0, -1.0])).is_err());
        assert!(KernelSpec::new(1, KernelFamily::Custom(vec![])).is_err());
        let k = KernelSpec::new(1, KernelFamily::Custom(vec![1.0, 0.5])).unwrap();
        assert!(matches!(
            monomial_norm(&k, &Multidx(vec![2])),
            Err(Error::DegreeOverflow { degree: 2, available: 2 })
        ));
        assert!(KernelSpec::by_name("bergman", 1).is_err());
    }
}

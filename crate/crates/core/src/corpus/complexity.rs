//! Word-level code-mixing measures.
//!
//! With `N` tokens, `U` of them untagged (`UN`) and `max_w` the count of the
//! more frequent of BN and EN:
//!
//! * language factor / CMI: `100 · (1 − max_w / (N − U))`, 0 when `N = U`;
//! * switching factor: `100 · S / (N − 1)`, `S` being the number of BN/EN
//!   alternations between consecutive tagged words with UN tokens skipped,
//!   0 when `N ≤ 1`;
//! * mix factor: `100 · U / N`, 0 when `N = 0`.
//!
//! The composite factors CF1 to CF3 are pluggable [`ComplexityFormula`]s.

use std::fmt;

use serde::Serialize;

use crate::langid::LangTag;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Components {
    pub lf: f64,
    pub sf: f64,
    pub mf: f64,
}

pub fn components(tags: &[LangTag]) -> Components {
    let n = tags.len();
    if n == 0 {
        return Components::default();
    }
    let count = |t: LangTag| tags.iter().filter(|&&x| x == t).count();
    let (bn, en, un) = (count(LangTag::Bn), count(LangTag::En), count(LangTag::Un));
    let lf = if n == un {
        0.0
    } else {
        100.0 * (1.0 - bn.max(en) as f64 / (n - un) as f64)
    };
    let tagged: Vec<LangTag> = tags.iter().copied().filter(|&t| t != LangTag::Un).collect();
    let switches = tagged.windows(2).filter(|w| w[0] != w[1]).count();
    let sf = if n > 1 {
        100.0 * switches as f64 / (n - 1) as f64
    } else {
        0.0
    };
    Components {
        lf,
        sf,
        mf: 100.0 * un as f64 / n as f64,
    }
}

/// Code-Mixing Index of one tagged utterance, in `[0, 100]`.
pub fn cmi(tags: &[LangTag]) -> f64 {
    components(tags).lf
}

pub trait ComplexityFormula: fmt::Debug + Send + Sync {
    fn compose(&self, c: &Components) -> f64;
}

/// Cube root of the product of the three factors.
#[derive(Debug, Clone, Copy, Default)]
pub struct GeometricMean;

impl ComplexityFormula for GeometricMean {
    fn compose(&self, c: &Components) -> f64 {
        (c.lf * c.sf * c.mf).cbrt()
    }
}

/// Mean of the three factors times `scale`.
#[derive(Debug, Clone, Copy)]
pub struct ArithmeticMean {
    pub scale: f64,
}

impl ComplexityFormula for ArithmeticMean {
    fn compose(&self, c: &Components) -> f64 {
        (c.lf + c.sf + c.mf) / 3.0 * self.scale
    }
}

/// Another formula's value times `factor`.
#[derive(Debug)]
pub struct Scaled {
    pub factor: f64,
    pub inner: Box<dyn ComplexityFormula>,
}

impl ComplexityFormula for Scaled {
    fn compose(&self, c: &Components) -> f64 {
        self.factor * self.inner.compose(c)
    }
}

#[derive(Debug)]
pub struct ComplexityFormulas {
    pub cf1: Box<dyn ComplexityFormula>,
    pub cf2: Box<dyn ComplexityFormula>,
    pub cf3: Box<dyn ComplexityFormula>,
}

impl Default for ComplexityFormulas {
    fn default() -> Self {
        ComplexityFormulas {
            cf1: Box::new(GeometricMean),
            cf2: Box::new(ArithmeticMean { scale: 2.0 }),
            cf3: Box::new(Scaled {
                factor: 0.9,
                inner: Box::new(ArithmeticMean { scale: 2.0 }),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub cmi: f64,
    pub cf1: f64,
    pub cf2: f64,
    pub cf3: f64,
    pub lf: f64,
    pub sf: f64,
    pub mf: f64,
}

pub fn complexity_with(tags: &[LangTag], formulas: &ComplexityFormulas) -> ComplexityReport {
    let c = components(tags);
    ComplexityReport {
        cmi: c.lf,
        cf1: formulas.cf1.compose(&c),
        cf2: formulas.cf2.compose(&c),
        cf3: formulas.cf3.compose(&c),
        lf: c.lf,
        sf: c.sf,
        mf: c.mf,
    }
}

pub fn complexity(tags: &[LangTag]) -> ComplexityReport {
    complexity_with(tags, &ComplexityFormulas::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use LangTag::*;

    #[test]
    fn cmi_examples() {
        assert_eq!(cmi(&[Bn, Bn, Bn]), 0.0);
        assert_eq!(cmi(&[Bn, En]), 50.0);
        assert!((cmi(&[Bn, Bn, En, Un]) - 100.0 / 3.0).abs() < 1e-12);
        assert_eq!(cmi(&[Un, Un]), 0.0);
        assert_eq!(cmi(&[]), 0.0);
    }

    #[test]
    fn switching() {
        assert_eq!(components(&[Bn, En, Bn, En]).sf, 100.0);
        // one switch across the UN, three gaps
        assert!((components(&[Bn, Un, En, En]).sf - 100.0 / 3.0).abs() < 1e-12);
        assert_eq!(components(&[En]).sf, 0.0);
    }

    #[test]
    fn monolingual_is_zero() {
        let r = complexity(&[Bn, Un, Bn, Bn]);
        assert_eq!((r.cmi, r.lf, r.sf, r.cf1), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(r.mf, 25.0);
    }

    #[test]
    fn default_compositions() {
        let r = complexity(&[Bn, En, Un, Bn]);
        let c = components(&[Bn, En, Un, Bn]);
        assert!((r.cf1 - (c.lf * c.sf * c.mf).cbrt()).abs() < 1e-12);
        assert!((r.cf2 - (c.lf + c.sf + c.mf) / 3.0 * 2.0).abs() < 1e-12);
        assert!((r.cf3 - 0.9 * r.cf2).abs() < 1e-12);
    }

    #[test]
    fn formulas_are_replaceable() {
        let f = ComplexityFormulas {
            cf1: Box::new(ArithmeticMean { scale: 1.0 }),
            ..ComplexityFormulas::default()
        };
        let r = complexity_with(&[Bn, En], &f);
        assert!((r.cf1 - (50.0 + 100.0 + 0.0) / 3.0).abs() < 1e-12);
    }
}

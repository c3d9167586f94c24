//! JSON model descriptors.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{Generator, Gq, HalfInt};

/// Which super-Virasoro algebra a Verma descriptor refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VermaKind {
    Virasoro,
    Ns,
    N2,
}

impl VermaKind {
    pub fn label(self) -> &'static str {
        match self {
            VermaKind::Virasoro => "Virasoro",
            VermaKind::Ns => "NS",
            VermaKind::N2 => "N2",
        }
    }

    /// Whether `c` lies in the continuous or discrete unitary series.
    pub fn in_unitary_series(self, c: &Gq) -> bool {
        if !c.is_real() {
            return false;
        }
        let c = &c.re;
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let (threshold, discrete): (BigRational, Box<dyn Fn(i64) -> BigRational>) = match self {
            // 1 − 6/(m(m+1)), m ≥ 2
            VermaKind::Virasoro => (r(1, 1), Box::new(move |m| r(1, 1) - r(6, m * (m + 1)))),
            // 3/2 (1 − 8/(m(m+2))), m ≥ 3
            VermaKind::Ns => (
                r(3, 2),
                Box::new(move |m| r(3, 2) * (r(1, 1) - r(8, m * (m + 2)))),
            ),
            // 3n/(n+2), n ≥ 1
            VermaKind::N2 => (r(3, 1), Box::new(move |n| r(3 * n, n + 2))),
        };
        if *c >= threshold {
            return true;
        }
        let start = match self {
            VermaKind::Virasoro => 2,
            VermaKind::Ns => 3,
            VermaKind::N2 => 1,
        };
        // the discrete series increases to the threshold; stop once past c
        (start..10_000).map(|m| discrete(m)).take_while(|v| v <= c).any(|v| v == *c)
    }
}

/// Parameters of a Verma descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VermaParams {
    pub c: Gq,
    pub cutoff: HalfInt,
    #[serde(default)]
    pub quotient: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Generator>>,
}

/// Serializable description of a model; `kind` selects the construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelDescriptor {
    FreeFermion {
        cutoff: HalfInt,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Generator>>,
    },
    Tensor {
        factors: Vec<ModelDescriptor>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Generator>>,
    },
    NsVerma(VermaParams),
    N2Verma(VermaParams),
    VirasoroVerma(VermaParams),
}

impl ModelDescriptor {
    pub fn free_fermion(cutoff: HalfInt) -> Self {
        ModelDescriptor::FreeFermion { cutoff, generators: None }
    }

    pub fn tensor(factors: Vec<ModelDescriptor>) -> Self {
        ModelDescriptor::Tensor { factors, generators: None }
    }

    pub fn verma(kind: VermaKind, c: Gq, cutoff: HalfInt, quotient: bool) -> Self {
        let p = VermaParams { c, cutoff, quotient, generators: None };
        match kind {
            VermaKind::Virasoro => ModelDescriptor::VirasoroVerma(p),
            VermaKind::Ns => ModelDescriptor::NsVerma(p),
            VermaKind::N2 => ModelDescriptor::N2Verma(p),
        }
    }

    pub fn verma_params(&self) -> Option<(VermaKind, &VermaParams)> {
        match self {
            ModelDescriptor::NsVerma(p) => Some((VermaKind::Ns, p)),
            ModelDescriptor::N2Verma(p) => Some((VermaKind::N2, p)),
            ModelDescriptor::VirasoroVerma(p) => Some((VermaKind::Virasoro, p)),
            _ => None,
        }
    }

    fn verma_params_mut(&mut self) -> Option<&mut VermaParams> {
        match self {
            ModelDescriptor::NsVerma(p)
            | ModelDescriptor::N2Verma(p)
            | ModelDescriptor::VirasoroVerma(p) => Some(p),
            _ => None,
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        let d: ModelDescriptor =
            serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelDescriptor::FreeFermion { cutoff, .. } => check_cutoff(*cutoff),
            ModelDescriptor::Tensor { factors, .. } => {
                if factors.is_empty() {
                    return Err(Error::Schema("tensor needs at least one factor".into()));
                }
                factors.iter().try_for_each(|f| f.validate())
            }
            _ => {
                let (_, p) = self.verma_params().expect("verma variant");
                if !p.c.is_real() {
                    return Err(Error::Schema("central charge must be real".into()));
                }
                check_cutoff(p.cutoff)
            }
        }
    }

    pub fn cutoff(&self) -> HalfInt {
        match self {
            ModelDescriptor::FreeFermion { cutoff, .. } => *cutoff,
            ModelDescriptor::Tensor { factors, .. } => {
                factors.iter().map(|f| f.cutoff()).min().unwrap_or(HalfInt::ZERO)
            }
            _ => self.verma_params().expect("verma variant").1.cutoff,
        }
    }

    /// Copy with every cutoff replaced.
    pub fn with_cutoff(&self, cutoff: HalfInt) -> Self {
        let mut d = self.without_generators();
        match &mut d {
            ModelDescriptor::FreeFermion { cutoff: c, .. } => *c = cutoff,
            ModelDescriptor::Tensor { factors, .. } => {
                for f in factors.iter_mut() {
                    *f = f.with_cutoff(cutoff);
                }
            }
            other => other.verma_params_mut().expect("verma variant").cutoff = cutoff,
        }
        d
    }

    /// Copy with generator tables stripped (recursively).
    pub fn without_generators(&self) -> Self {
        let mut d = self.clone();
        match &mut d {
            ModelDescriptor::FreeFermion { generators, .. } => *generators = None,
            ModelDescriptor::Tensor { factors, generators } => {
                *generators = None;
                for f in factors.iter_mut() {
                    *f = f.without_generators();
                }
            }
            other => other.verma_params_mut().expect("verma variant").generators = None,
        }
        d
    }

    pub fn declared_generators(&self) -> Option<&[Generator]> {
        match self {
            ModelDescriptor::FreeFermion { generators, .. }
            | ModelDescriptor::Tensor { generators, .. } => generators.as_deref(),
            other => other.verma_params().and_then(|(_, p)| p.generators.as_deref()),
        }
    }

    /// Copy with the top-level generator table filled in.
    pub fn with_generators(&self, table: Vec<Generator>) -> Self {
        let mut d = self.clone();
        match &mut d {
            ModelDescriptor::FreeFermion { generators, .. }
            | ModelDescriptor::Tensor { generators, .. } => *generators = Some(table),
            other => other.verma_params_mut().expect("verma variant").generators = Some(table),
        }
        d
    }
}

fn check_cutoff(c: HalfInt) -> Result<()> {
    if c < HalfInt::ZERO {
        Err(Error::Schema(format!("cutoff must be non-negative, got {c}")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let d = ModelDescriptor::parse(r#"{"kind":"free_fermion","cutoff":"13/2"}"#).unwrap();
        assert_eq!(d.cutoff(), HalfInt::from_twice(13));
        let d = ModelDescriptor::parse(
            r#"{"kind":"ns_verma","c":"7/10","cutoff":"6","quotient":true}"#,
        )
        .unwrap();
        let (k, p) = d.verma_params().unwrap();
        assert_eq!(k, VermaKind::Ns);
        assert!(p.quotient);
        assert_eq!(p.c, Gq::ratio(7, 10));
    }

    #[test]
    fn malformed_central_charge_is_rejected() {
        assert!(ModelDescriptor::parse(r#"{"kind":"ns_verma","c":"seven","cutoff":"6"}"#).is_err());
        assert!(ModelDescriptor::parse(r#"{"kind":"ns_verma","c":"1/0","cutoff":"6"}"#).is_err());
        assert!(ModelDescriptor::parse(r#"{"kind":"lattice","cutoff":"6"}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let d = ModelDescriptor::tensor(vec![
            ModelDescriptor::free_fermion(HalfInt::int(3)),
            ModelDescriptor::verma(VermaKind::N2, Gq::int(1), HalfInt::int(2), false),
        ]);
        let back = ModelDescriptor::parse(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), d.to_json());
    }

    #[test]
    fn unitary_series_membership() {
        assert!(VermaKind::Ns.in_unitary_series(&Gq::ratio(7, 10)));
        assert!(VermaKind::Ns.in_unitary_series(&Gq::ratio(3, 2)));
        assert!(VermaKind::Ns.in_unitary_series(&Gq::int(5)));
        assert!(!VermaKind::Ns.in_unitary_series(&Gq::ratio(1, 2)));
        assert!(VermaKind::N2.in_unitary_series(&Gq::int(1)));
        assert!(!VermaKind::N2.in_unitary_series(&Gq::ratio(5, 4)));
        assert!(VermaKind::Virasoro.in_unitary_series(&Gq::ratio(1, 2)));
        assert!(VermaKind::Virasoro.in_unitary_series(&Gq::ratio(7, 10)));
        assert!(!VermaKind::Virasoro.in_unitary_series(&Gq::ratio(1, 3)));
    }
}

//! Group and length settings shared by the subcommands, from flags or a TOML file.
//!
//! ```toml
//! a = "Z/3"
//! b = "table:s3.txt"
//! precision = 1e-12
//!
//! [lengths]
//! a = "1/2"
//! b = "1, 1, 1, 2, 2"
//! ```

use std::path::Path;

use freeprod::{
    FactorKind, FactorSpec, FreeProduct, LengthAssignment, Rational, RealWeighted, Side, WeightedFreeProduct,
    WeightedGenSet,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_PRECISION: f64 = 1e-10;

/// Largest denominator tried when decimal lengths are put on a lattice.
const MAX_DENOMINATOR: i64 = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lengths {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub a: String,
    pub b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub lengths: Lengths,
}

fn is_default(l: &Lengths) -> bool {
    *l == Lengths::default()
}

impl GroupConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::msg(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: GroupConfig = toml::from_str(text).map_err(|e| CliError::msg(format!("config: {e}")))?;
        cfg.group()?;
        if let Some(p) = cfg.precision {
            check_precision(p)?;
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn group(&self) -> Result<FreeProduct, CliError> {
        Ok(FreeProduct::new(FactorSpec::parse(&self.a)?, FactorSpec::parse(&self.b)?))
    }
}

pub fn check_precision(p: f64) -> Result<f64, CliError> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(CliError::msg(format!("precision must lie in (0, 1), got {p}")))
    }
}

/// A length as typed: exact when it parses as an integer or `p/q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Real(f64),
}

impl Scalar {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let t = text.trim();
        if let Ok(r) = t.parse::<Rational>() {
            return Ok(Scalar::Exact(r));
        }
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Scalar::Real)
            .ok_or_else(|| CliError::msg(format!("not a number: {text:?}")))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Scalar::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Scalar::Real(x) => x,
        }
    }
}

pub fn parse_f64(text: &str) -> Result<f64, String> {
    Scalar::parse(text).map(Scalar::to_f64).map_err(|e| e.to_string())
}

/// Lengths for one factor: a single generator length for cyclic factors, a
/// comma-separated list for table factors. Defaults to all ones.
fn side_lengths(factor: &FactorSpec, text: Option<&str>) -> Result<LengthAssignment<Scalar>, CliError> {
    let one = Scalar::Exact(Rational::from_integer(1));
    match (factor.kind(), text) {
        (FactorKind::Table(t), None) => Ok(LengthAssignment::PerElement(vec![one; t.order() - 1])),
        (FactorKind::Table(t), Some(list)) => {
            let v = list.split(',').map(Scalar::parse).collect::<Result<Vec<_>, _>>()?;
            // validation runs on the f64 images
            LengthAssignment::per_element(factor, v.iter().map(|s| s.to_f64()).collect())?;
            // list is in label order; storage is by internal index
            let labels: Vec<usize> = (0..t.order()).filter(|&l| l != t.identity_label()).collect();
            let stored = (1..t.order())
                .map(|i| v[labels.binary_search(&t.label(i)).expect("non-identity label")])
                .collect();
            Ok(LengthAssignment::PerElement(stored))
        }
        (_, None) => Ok(LengthAssignment::Generator(one)),
        (_, Some(text)) => {
            let s = Scalar::parse(text)?;
            if !(s.to_f64() > 0.0) {
                return Err(CliError::msg(format!("length must be positive, got {text}")));
            }
            Ok(LengthAssignment::Generator(s))
        }
    }
}

/// A group with letter lengths, kept as typed.
pub struct Weighted {
    group: FreeProduct,
    a: LengthAssignment<Scalar>,
    b: LengthAssignment<Scalar>,
}

impl Weighted {
    pub fn new(group: FreeProduct, la: Option<&str>, lb: Option<&str>) -> Result<Self, CliError> {
        let a = side_lengths(group.factor(Side::A), la)?;
        let b = side_lengths(group.factor(Side::B), lb)?;
        Ok(Weighted { group, a, b })
    }

    pub fn real(&self) -> Result<RealWeighted, CliError> {
        Ok(WeightedFreeProduct::new(
            self.group.clone(),
            self.a.map(|s| s.to_f64()),
            self.b.map(|s| s.to_f64()),
        )?)
    }

    /// Integer lattice for counting; exact when every length was typed exactly.
    pub fn lattice(&self) -> Result<WeightedGenSet, CliError> {
        let exact = |l: &LengthAssignment<Scalar>| -> Option<LengthAssignment<Rational>> {
            match l {
                LengthAssignment::Generator(Scalar::Exact(r)) => Some(LengthAssignment::Generator(*r)),
                LengthAssignment::PerElement(v) => v
                    .iter()
                    .map(|s| match s {
                        Scalar::Exact(r) => Some(*r),
                        Scalar::Real(_) => None,
                    })
                    .collect::<Option<Vec<_>>>()
                    .map(LengthAssignment::PerElement),
                _ => None,
            }
        };
        match (exact(&self.a), exact(&self.b)) {
            (Some(a), Some(b)) => Ok(WeightedGenSet::from_rational(&WeightedFreeProduct::new(
                self.group.clone(),
                a,
                b,
            )?)?),
            _ => Ok(WeightedGenSet::from_real(&self.real()?, MAX_DENOMINATOR)?),
        }
    }
}

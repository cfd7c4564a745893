//! Registered partial-information functions.
//!
//! An adversary never hands the experiment an arbitrary closure: it names a
//! function from this registry together with its parameters. Each variant
//! carries two independent code paths, `evaluate` and `verify`, and the
//! experiment scores claims through `verify` only.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::bits::{BitString, Message, Value};

/// `f : {x0, x1} → {0, 1}` with `f(x0) = 0` and `f(x1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwoPointFunction {
    x0: Message,
    x1: Message,
}

impl TwoPointFunction {
    pub fn new(x0: Message, x1: Message) -> Result<Self, ModelError> {
        if x0 == x1 {
            return Err(ModelError::IdenticalPoints);
        }
        if x0.len() != x1.len() {
            return Err(ModelError::UnequalLengths(x0.len(), x1.len()));
        }
        Ok(Self { x0, x1 })
    }

    pub fn x0(&self) -> &Message {
        &self.x0
    }

    pub fn x1(&self) -> &Message {
        &self.x1
    }
}

impl<'de> Deserialize<'de> for TwoPointFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            x0: Message,
            x1: Message,
        }
        let raw = Raw::deserialize(deserializer)?;
        TwoPointFunction::new(raw.x0, raw.x1).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "function", rename_all = "snake_case")]
pub enum PartialInfoFunction {
    /// Last bit of a `len`-bit message.
    LeastSignificantBit { len: usize },
    /// Same `value` for every `len`-bit message.
    Constant { len: usize, value: Value },
    TwoPoint(TwoPointFunction),
}

impl PartialInfoFunction {
    pub fn two_point(x0: Message, x1: Message) -> Result<Self, ModelError> {
        TwoPointFunction::new(x0, x1).map(Self::TwoPoint)
    }

    pub fn in_domain(&self, x: &Message) -> bool {
        match self {
            Self::LeastSignificantBit { len } | Self::Constant { len, .. } => x.len() == *len,
            Self::TwoPoint(tp) => x == &tp.x0 || x == &tp.x1,
        }
    }

    /// Every message in the domain, in a fixed order.
    pub fn domain(&self) -> Vec<Message> {
        match self {
            Self::LeastSignificantBit { len } | Self::Constant { len, .. } => {
                BitString::all_of_len(*len).filter_map(|b| Message::new(b).ok()).collect()
            }
            Self::TwoPoint(tp) => vec![tp.x0.clone(), tp.x1.clone()],
        }
    }

    pub fn evaluate(&self, x: &Message) -> Result<Value, ModelError> {
        if !self.in_domain(x) {
            return Err(ModelError::OutsideDomain);
        }
        Ok(match self {
            Self::LeastSignificantBit { .. } => Value::bit(x.lsb()),
            Self::Constant { value, .. } => value.clone(),
            Self::TwoPoint(tp) => Value::bit(x == &tp.x1),
        })
    }

    /// The polynomial-time verifier: accepts exactly `v = f(x)`.
    pub fn verify(&self, x: &Message, v: &Value) -> Result<bool, ModelError> {
        if !self.in_domain(x) {
            return Err(ModelError::OutsideDomain);
        }
        let bits = v.bits();
        Ok(match self {
            Self::LeastSignificantBit { .. } => bits.len() == 1 && bits.bit(0) == x.lsb(),
            Self::Constant { value, .. } => bits.as_slice() == value.bits().as_slice(),
            Self::TwoPoint(tp) => {
                bits.len() == 1 && if bits.bit(0) { x == &tp.x1 } else { x == &tp.x0 }
            }
        })
    }

    pub fn description(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PartialInfoFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LeastSignificantBit { len } => write!(f, "lsb on {{0,1}}^{len}"),
            Self::Constant { len, value } => write!(f, "constant {value} on {{0,1}}^{len}"),
            Self::TwoPoint(tp) => write!(f, "two-point f({})=0, f({})=1", tp.x0, tp.x1),
        }
    }
}

/// The `(v, f)` pair emitted by a CSS adversary's second phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialInfoClaim {
    pub value: Value,
    pub function: PartialInfoFunction,
}

/// Convenience for callers that already hold a domain element.
pub fn verify_partial_info(
    f: &PartialInfoFunction,
    x: &Message,
    v: &Value,
) -> Result<bool, ModelError> {
    f.verify(x, v)
}

/// A value on which the verifier disagrees with `v = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifierViolation {
    pub x: Message,
    pub value: Value,
    pub accepted: bool,
}

/// Exhaustive soundness and completeness of `f.verify` on `f`'s domain:
/// for every `x` and every candidate value of up to `max_value_len` bits
/// (and `f(x)` itself), the verifier accepts exactly `f(x)`.
pub fn check_verifier_contract(
    f: &PartialInfoFunction,
    max_value_len: usize,
) -> Result<u64, VerifierViolation> {
    let candidates: Vec<Value> = (0..=max_value_len).flat_map(BitString::all_of_len).map(Value::new).collect();
    let mut checked = 0;
    for x in f.domain() {
        let fx = f.evaluate(&x).expect("domain element");
        for v in candidates.iter().chain(std::iter::once(&fx)) {
            let accepted = f.verify(&x, v).expect("domain element");
            if accepted != (v == &fx) {
                return Err(VerifierViolation { x, value: v.clone(), accepted });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn msg(s: &str) -> Message {
        s.parse().unwrap()
    }

    fn val(s: &str) -> Value {
        Value::new(s.parse().unwrap())
    }

    #[test]
    fn two_point_examples() {
        let f = PartialInfoFunction::two_point(msg("0000"), msg("1111")).unwrap();
        assert_eq!(verify_partial_info(&f, &msg("0000"), &val("0")), Ok(true));
        assert_eq!(verify_partial_info(&f, &msg("0000"), &val("1")), Ok(false));
        assert_eq!(f.verify(&msg("1111"), &val("1")), Ok(true));
        assert_eq!(f.verify(&msg("0101"), &val("1")), Err(ModelError::OutsideDomain));
    }

    #[test]
    fn lsb_example() {
        let f = PartialInfoFunction::LeastSignificantBit { len: 4 };
        assert_eq!(f.verify(&msg("1011"), &val("1")), Ok(true));
        assert_eq!(f.verify(&msg("1011"), &val("0")), Ok(false));
        assert_eq!(f.verify(&msg("1011"), &val("01")), Ok(false));
        assert_eq!(f.evaluate(&msg("101")), Err(ModelError::OutsideDomain));
    }

    #[test]
    fn two_point_rejects_degenerate_pairs() {
        assert_eq!(
            PartialInfoFunction::two_point(msg("01"), msg("01")),
            Err(ModelError::IdenticalPoints)
        );
        assert!(PartialInfoFunction::two_point(msg("01"), msg("1")).is_err());
        assert!(serde_json::from_str::<TwoPointFunction>(r#"{"x0":"1","x1":"1"}"#).is_err());
    }

    #[test]
    fn verifier_exhaustive_on_small_domains() {
        let values: Vec<Value> = (0..=3).flat_map(BitString::all_of_len).map(Value::new).collect();
        let fs = [
            PartialInfoFunction::LeastSignificantBit { len: 3 },
            PartialInfoFunction::Constant { len: 3, value: val("0") },
            PartialInfoFunction::Constant { len: 2, value: val("101") },
            PartialInfoFunction::two_point(msg("010"), msg("110")).unwrap(),
        ];
        for f in &fs {
            for x in f.domain() {
                let fx = f.evaluate(&x).unwrap();
                for v in &values {
                    assert_eq!(f.verify(&x, v).unwrap(), v == &fx, "{f} at {x} with {v}");
                }
            }
        }
    }

    #[test]
    fn claims_serialize_with_function_tag() {
        let claim = PartialInfoClaim {
            value: val("1"),
            function: PartialInfoFunction::LeastSignificantBit { len: 4 },
        };
        let json = serde_json::to_string(&claim).unwrap();
        assert_eq!(json, r#"{"value":"1","function":{"function":"least_significant_bit","len":4}}"#);
        assert_eq!(serde_json::from_str::<PartialInfoClaim>(&json).unwrap(), claim);
    }
}

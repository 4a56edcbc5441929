//! A rank-two function or distribution, told apart by its JSON `schema` tag.

use crate::error::{Error, Result};
use crate::fourier::{fourier_rank2_dist, fourier_rank2_fn};
use crate::heisenberg::{act_ext_dist, act_ext_fn, act_tilde_dist, act_tilde_fn, HeisExt, HeisTilde};
use crate::rank2::{pair_rank2, RankTwoDistribution, RankTwoFunction, DISTRIBUTION_SCHEMA, FUNCTION_SCHEMA};
use crate::scalar::Scalar;
use crate::value_group::{BreveElement, GammaElement};
use serde::de::DeserializeOwned;
use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Function(RankTwoFunction),
    Distribution(RankTwoDistribution),
}

fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

impl Element {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match v.get("schema").and_then(Value::as_str) {
            Some(FUNCTION_SCHEMA) => Ok(Element::Function(from_value(v)?)),
            Some(DISTRIBUTION_SCHEMA) => Ok(Element::Distribution(from_value(v)?)),
            Some(other) => Err(Error::Parse(format!("unknown schema `{other}`"))),
            None => Err(Error::Parse("missing `schema` field".into())),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Serializes and parses back, failing unless the result is identical.
    pub fn revalidated_json(&self) -> Result<String> {
        let text = self.to_json()?;
        if Element::parse(&text)? != *self {
            return Err(Error::Invalid("output does not survive a JSON round trip".into()));
        }
        Ok(text)
    }

    pub fn alpha(&self) -> BreveElement {
        match self {
            Element::Function(q) => q.alpha(),
            Element::Distribution(s) => s.alpha(),
        }
    }

    pub fn fourier(&self, gamma: GammaElement) -> Result<Self> {
        Ok(match self {
            Element::Function(q) => Element::Function(fourier_rank2_fn(q, gamma)?),
            Element::Distribution(s) => Element::Distribution(fourier_rank2_dist(s, gamma)?),
        })
    }

    pub fn act_tilde(&self, g: &HeisTilde) -> Result<Self> {
        Ok(match self {
            Element::Function(q) => Element::Function(act_tilde_fn(g, q)?),
            Element::Distribution(s) => Element::Distribution(act_tilde_dist(g, s)?),
        })
    }

    pub fn act_ext(&self, g: &HeisExt) -> Result<Self> {
        Ok(match self {
            Element::Function(q) => Element::Function(act_ext_fn(g, q)?),
            Element::Distribution(s) => Element::Distribution(act_ext_dist(g, s)?),
        })
    }

    /// `⟨Q, S⟩`, accepting the two elements in either order.
    pub fn pair(&self, other: &Element) -> Result<Scalar> {
        match (self, other) {
            (Element::Function(q), Element::Distribution(s)) | (Element::Distribution(s), Element::Function(q)) => {
                pair_rank2(q, s)
            }
            _ => Err(Error::Invalid("pairing needs one function and one distribution".into())),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Element::Function(q) => q.serialize(s),
            Element::Distribution(d) => d.serialize(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsor::{MeasureElement, Staircase};

    #[test]
    fn dispatch_and_pair() {
        let alpha = BreveElement::column(0);
        let q = Element::Function(RankTwoFunction::delta_staircase(&Staircase::standard(), alpha));
        let point = BreveElement::fin(0, 0);
        let s = RankTwoDistribution::delta_gamma(point, &MeasureElement::base(alpha, point), alpha).unwrap();
        let s = Element::parse(&Element::Distribution(s).to_json().unwrap()).unwrap();
        let q2 = Element::parse(&q.revalidated_json().unwrap()).unwrap();
        assert_eq!(q2, q);
        assert_eq!(q.pair(&s).unwrap(), Scalar::one());
        assert_eq!(s.pair(&q).unwrap(), Scalar::one());
        assert!(q.pair(&q).is_err());
        assert!(matches!(Element::parse(r#"{"schema":"nope"}"#), Err(Error::Parse(_))));
    }
}

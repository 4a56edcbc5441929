//! The group Γ = Z ⊕ Z with projection onto the first coordinate, the ordered
//! set Γ̆ = Γ ∪ π(Γ), the shear action of C = Z and the involution ⊥(γ).
//!
//! Coordinates are taken with respect to the standard section `n ↦ (n, 0)`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// An element `(n, p)` of Γ; `n` is the image under π.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GammaElement {
    pub n: i64,
    pub p: i64,
}

impl From<[i64; 2]> for GammaElement {
    fn from(v: [i64; 2]) -> Self {
        GammaElement { n: v[0], p: v[1] }
    }
}

impl From<GammaElement> for [i64; 2] {
    fn from(g: GammaElement) -> Self {
        [g.n, g.p]
    }
}

impl std::ops::Add for GammaElement {
    type Output = GammaElement;

    fn add(self, o: GammaElement) -> Self {
        GammaElement::new(self.n + o.n, self.p + o.p)
    }
}

impl std::ops::Neg for GammaElement {
    type Output = GammaElement;

    fn neg(self) -> Self {
        GammaElement::new(-self.n, -self.p)
    }
}

impl std::ops::Sub for GammaElement {
    type Output = GammaElement;

    fn sub(self, o: GammaElement) -> Self {
        self + -o
    }
}

impl GammaElement {
    pub const ZERO: GammaElement = GammaElement { n: 0, p: 0 };

    pub fn new(n: i64, p: i64) -> Self {
        GammaElement { n, p }
    }

    pub fn breve(self) -> BreveElement {
        BreveElement::fin(self.n, self.p)
    }

    /// The shear `k ⋄ (n, p) = (n, kn + p)`.
    pub fn shear(self, k: i64) -> Self {
        GammaElement::new(self.n, k * self.n + self.p)
    }
}

/// Fiber coordinate of a point of Γ̆.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fiber {
    NegInf,
    Fin(i64),
}

/// A point of Γ̆: either `(n, p)` or the column bottom `(n, −∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BreveElement {
    pub n: i64,
    pub fiber: Fiber,
}

impl BreveElement {
    pub fn fin(n: i64, p: i64) -> Self {
        BreveElement { n, fiber: Fiber::Fin(p) }
    }

    /// The column bottom `(n, −∞)`, i.e. the integer `n` viewed inside Γ̆.
    pub fn column(n: i64) -> Self {
        BreveElement { n, fiber: Fiber::NegInf }
    }

    pub fn is_column(&self) -> bool {
        self.fiber == Fiber::NegInf
    }

    pub fn fiber_value(&self) -> Option<i64> {
        match self.fiber {
            Fiber::Fin(p) => Some(p),
            Fiber::NegInf => None,
        }
    }

    pub fn as_gamma(&self) -> Option<GammaElement> {
        self.fiber_value().map(|p| GammaElement::new(self.n, p))
    }

    /// The commutative operation extending the group law, with −∞ absorbing.
    pub fn circ(self, o: BreveElement) -> BreveElement {
        let fiber = match (self.fiber, o.fiber) {
            (Fiber::Fin(a), Fiber::Fin(b)) => Fiber::Fin(a + b),
            _ => Fiber::NegInf,
        };
        BreveElement { n: self.n + o.n, fiber }
    }

    /// Translation by an element of Γ.
    pub fn translate(self, g: GammaElement) -> BreveElement {
        g.breve().circ(self)
    }

    pub fn shear(self, k: i64) -> BreveElement {
        match self.fiber {
            Fiber::Fin(p) => BreveElement::fin(self.n, k * self.n + p),
            Fiber::NegInf => self,
        }
    }

    /// The involution β ↦ β^⊥(γ): the least φ with φ∘β∘γ > 0.
    pub fn perp(self, gamma: GammaElement) -> BreveElement {
        match self.fiber {
            Fiber::Fin(p) => BreveElement::fin(-self.n - gamma.n, -p - gamma.p + 1),
            Fiber::NegInf => BreveElement::column(-self.n - gamma.n + 1),
        }
    }
}

impl Ord for BreveElement {
    fn cmp(&self, o: &Self) -> Ordering {
        self.n.cmp(&o.n).then_with(|| match (self.fiber, o.fiber) {
            (Fiber::NegInf, Fiber::NegInf) => Ordering::Equal,
            (Fiber::NegInf, Fiber::Fin(_)) => Ordering::Less,
            (Fiber::Fin(_), Fiber::NegInf) => Ordering::Greater,
            (Fiber::Fin(a), Fiber::Fin(b)) => a.cmp(&b),
        })
    }
}

impl PartialOrd for BreveElement {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for BreveElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.fiber {
            Fiber::Fin(p) => write!(f, "({}, {})", self.n, p),
            Fiber::NegInf => write!(f, "({}, -inf)", self.n),
        }
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.p)
    }
}

impl Serialize for BreveElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let second = match self.fiber {
            Fiber::Fin(p) => serde_json::Value::from(p),
            Fiber::NegInf => serde_json::Value::from("-inf"),
        };
        serde_json::Value::Array(vec![self.n.into(), second]).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BreveElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| D::Error::custom("expected [n, p] or [n, \"-inf\"]"))?;
        let n = arr[0].as_i64().ok_or_else(|| D::Error::custom("column index must be an integer"))?;
        match &arr[1] {
            serde_json::Value::String(s) if s == "-inf" => Ok(BreveElement::column(n)),
            other => other
                .as_i64()
                .map(|p| BreveElement::fin(n, p))
                .ok_or_else(|| D::Error::custom("fiber must be an integer or \"-inf\"")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert!(BreveElement::column(0) < BreveElement::fin(0, 5));
        assert!(BreveElement::column(1) > BreveElement::fin(0, 100));
        assert_eq!(BreveElement::fin(2, 3).cmp(&BreveElement::fin(2, 3)), Ordering::Equal);
    }

    #[test]
    fn circ_examples() {
        assert_eq!(BreveElement::fin(1, 2).circ(BreveElement::fin(3, 4)), BreveElement::fin(4, 6));
        assert_eq!(BreveElement::fin(1, 2).circ(BreveElement::column(3)), BreveElement::column(4));
        assert_eq!(BreveElement::column(0).circ(BreveElement::column(0)), BreveElement::column(0));
    }

    #[test]
    fn shear_examples() {
        assert_eq!(BreveElement::fin(3, 1).shear(2), BreveElement::fin(3, 7));
        assert_eq!(BreveElement::column(4).shear(5), BreveElement::column(4));
        assert_eq!(BreveElement::fin(-2, 9).shear(0), BreveElement::fin(-2, 9));
    }

    #[test]
    fn perp_examples() {
        let zero = GammaElement::ZERO;
        assert_eq!(BreveElement::column(4).perp(zero), BreveElement::column(-3));
        assert_eq!(BreveElement::fin(2, 7).perp(zero), BreveElement::fin(-2, -6));
        assert_eq!(BreveElement::fin(2, 5).perp(GammaElement::new(1, 1)), BreveElement::fin(-3, -5));
    }

    #[test]
    fn json_forms() {
        let a = BreveElement::fin(2, -1);
        let b = BreveElement::column(3);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[2,-1]");
        assert_eq!(serde_json::to_string(&b).unwrap(), "[3,\"-inf\"]");
        assert_eq!(serde_json::from_str::<BreveElement>("[3,\"-inf\"]").unwrap(), b);
        assert_eq!(serde_json::from_str::<GammaElement>("[1,2]").unwrap(), GammaElement::new(1, 2));
    }
}

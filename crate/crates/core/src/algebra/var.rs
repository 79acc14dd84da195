use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A variable name. Cheap to clone; ordered "naturally" so that `x2 < x10`
/// and `e9 < e10`. This order is the global variable order used for
/// canonical forms: a variable that sorts first is the most significant one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        Var(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl From<String> for Var {
    fn from(s: String) -> Self {
        Var(Arc::from(s))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Var::from(s))
    }
}

/// Compares strings chunk by chunk, digit runs numerically.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a.as_bytes(), b.as_bytes());
    loop {
        match (a.first(), b.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let la = a.iter().take_while(|c| c.is_ascii_digit()).count();
                let lb = b.iter().take_while(|c| c.is_ascii_digit()).count();
                let da = trim_zeros(&a[..la]);
                let db = trim_zeros(&b[..lb]);
                let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
                if ord != Ordering::Equal {
                    return ord;
                }
                a = &a[la..];
                b = &b[lb..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                a = &a[1..];
                b = &b[1..];
            }
        }
    }
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let n = d.iter().take_while(|&&c| c == b'0').count();
    &d[n..]
}

/// Role of a variable in a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    /// A coordinate whose zero set is a component of the divisor.
    Divisor,
    /// A coordinate transverse to the divisor.
    Free,
    /// A divisor coordinate created by a blow-up; never user supplied.
    Exceptional,
}

impl VarKind {
    pub fn is_divisor(self) -> bool {
        matches!(self, VarKind::Divisor | VarKind::Exceptional)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarLabel {
    pub var: Var,
    pub kind: VarKind,
}

impl VarLabel {
    pub fn new(var: impl Into<Var>, kind: VarKind) -> Self {
        VarLabel { var: var.into(), kind }
    }
}

/// Exceptional labels are `e1`, `e2`, ... in blow-up order.
pub fn exceptional_label(index: usize) -> Var {
    Var::new(format!("e{index}"))
}

/// True for names of the form `e<digits>`, which are reserved for
/// exceptional divisors.
pub fn is_reserved_name(name: &str) -> bool {
    let rest = match name.strip_prefix('e') {
        Some(r) => r,
        None => return false,
    };
    !rest.is_empty() && rest.bytes().all(|c| c.is_ascii_digit())
}

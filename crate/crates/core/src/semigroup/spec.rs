use serde::{Deserialize, Serialize};

use super::{FiniteTable, OrderedSemigroup, SemigroupKind};
use crate::error::{Error, Result};

/// JSON presentation of a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SemigroupSpec {
    FreeAbelian {
        generators: Vec<String>,
    },
    MuP {
        p: u64,
        copies: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<Vec<Vec<u32>>>,
    },
    PIdempotent {
        table: Vec<Vec<usize>>,
        order: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Unitarize {
        inner: Box<SemigroupSpec>,
    },
    Product {
        left: Box<SemigroupSpec>,
        right: Box<SemigroupSpec>,
    },
    OrderedSet {
        letters: Vec<String>,
    },
}

impl SemigroupSpec {
    pub fn build(&self) -> Result<OrderedSemigroup> {
        match self {
            SemigroupSpec::FreeAbelian { generators } => {
                if generators.is_empty() {
                    return Err(Error::InvalidSemigroup("free abelian semigroup needs a generator".into()));
                }
                OrderedSemigroup::free_abelian(generators)
            }
            SemigroupSpec::MuP { p, copies, order } => OrderedSemigroup::mu_p(*p, *copies, order.as_deref()),
            SemigroupSpec::PIdempotent { table, order, names } => OrderedSemigroup::finite(table, order, names.as_deref()),
            SemigroupSpec::Unitarize { inner } => Ok(OrderedSemigroup::unitarize(inner.build()?)),
            SemigroupSpec::Product { left, right } => Ok(OrderedSemigroup::product(left.build()?, right.build()?)),
            SemigroupSpec::OrderedSet { letters } => OrderedSemigroup::ordered_set(letters),
        }
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("semigroup JSON: {e}")))
    }
}

fn table_spec(t: &FiniteTable) -> SemigroupSpec {
    SemigroupSpec::PIdempotent {
        table: t.table.iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect(),
        order: (0..t.names.len()).collect(),
        names: Some(t.names.clone()),
    }
}

impl OrderedSemigroup {
    pub fn to_spec(&self) -> SemigroupSpec {
        match &self.kind {
            SemigroupKind::FreeAbelian { generators } => SemigroupSpec::FreeAbelian { generators: generators.clone() },
            SemigroupKind::FinitePIdempotent(t) => table_spec(t),
            SemigroupKind::ElementaryPGroup { p, copies, table } => {
                let default = OrderedSemigroup::mu_p(*p, *copies, None).ok();
                let same = matches!(default.as_ref().map(|d| &d.kind),
                    Some(SemigroupKind::ElementaryPGroup { table: t, .. }) if t == table);
                if same {
                    SemigroupSpec::MuP { p: *p, copies: *copies, order: None }
                } else {
                    table_spec(table)
                }
            }
            SemigroupKind::OrderedSet { letters } => SemigroupSpec::OrderedSet { letters: letters.clone() },
            SemigroupKind::Unitarized(s) => SemigroupSpec::Unitarize { inner: Box::new(s.to_spec()) },
            SemigroupKind::Product(a, b) => SemigroupSpec::Product { left: Box::new(a.to_spec()), right: Box::new(b.to_spec()) },
        }
    }

    /// Short human-readable description, e.g. `M(x,y)` or `μ_3^2`.
    pub fn describe(&self) -> String {
        match &self.kind {
            SemigroupKind::FreeAbelian { generators } => format!("F({})", generators.join(",")),
            SemigroupKind::FinitePIdempotent(t) => format!("finite{{{}}}", t.names.join(",")),
            SemigroupKind::ElementaryPGroup { p, copies, .. } if *copies == 1 => format!("mu_{p}"),
            SemigroupKind::ElementaryPGroup { p, copies, .. } => format!("mu_{p}^{copies}"),
            SemigroupKind::OrderedSet { letters } => format!("set{{{}}}", letters.join(",")),
            SemigroupKind::Unitarized(s) => match &s.kind {
                SemigroupKind::FreeAbelian { generators } => format!("M({})", generators.join(",")),
                _ => format!("unit({})", s.describe()),
            },
            SemigroupKind::Product(a, b) => format!("{} x {}", a.describe(), b.describe()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_shapes() {
        let s = SemigroupSpec::parse_json(r#"{"kind":"free_abelian","generators":["x","y"]}"#).unwrap();
        assert_eq!(s.build().unwrap().describe(), "F(x,y)");
        let s = SemigroupSpec::parse_json(r#"{"kind":"mu_p","p":3,"copies":2}"#).unwrap();
        assert_eq!(s.build().unwrap().elements_of_degree(0).len(), 9);
        let s = SemigroupSpec::parse_json(
            r#"{"kind":"product","left":{"kind":"unitarize","inner":{"kind":"free_abelian","generators":["x"]}},
                "right":{"kind":"p_idempotent","table":[[0,1],[1,1]],"order":[0,1]}}"#,
        )
        .unwrap();
        let sg = s.build().unwrap();
        assert_eq!(sg.to_spec().build().unwrap(), sg);
        assert!(SemigroupSpec::parse_json(r#"{"kind":"nope"}"#).is_err());
        assert!(SemigroupSpec::parse_json(r#"{"kind":"free_abelian","generators":[]}"#).unwrap().build().is_err());
    }
}

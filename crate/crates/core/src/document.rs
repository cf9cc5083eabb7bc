//! JSON documents for instances and allocations.
//!
//! Rationals are written as JSON integers when integral and as `"p/q"` strings
//! otherwise; floats are rejected on input. Emission is canonical, so
//! `to_json(from_json(s)) == s` for any document this module wrote.

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::allocation::Allocation;
use crate::bundle::{Bundle, MAX_ITEMS};
use crate::error::{Error, Result};
use crate::instance::{Flags, Instance};
use crate::valuation::Valuation;
use crate::Value;

/// Serde adapter for a single [`Value`].
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Value, s: S) -> std::result::Result<S::Ok, S::Error> {
        if v.is_integer() {
            s.serialize_i64(*v.numer())
        } else {
            s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Value, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    struct RationalVisitor;

    impl<'de> Visitor<'de> for RationalVisitor {
        type Value = Value;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a \"p/q\" string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Value, E> {
            Ok(Value::from_integer(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Value, E> {
            i64::try_from(v)
                .map(Value::from_integer)
                .map_err(|_| E::custom("integer out of range"))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Value, E> {
            Err(E::custom(format!(
                "float {v} is not an exact rational; write it as \"p/q\""
            )))
        }

        fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Value, E> {
            parse_rational(s).map_err(E::custom)
        }
    }
}

/// Serde adapter for `Vec<Value>`.
pub mod rational_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "rational")] Value);

    pub fn serialize<S: Serializer>(v: &[Value], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Wrap(*x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Value>, D::Error> {
        let raw: Vec<Wrap> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|w| w.0).collect())
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> std::result::Result<Value, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let den: i64 = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if den == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Value::new(num, den))
}

/// Formats a rational the way documents and traces write it: `3`, `5/2`.
pub fn fmt_rational(v: &Value) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl Serialize for Bundle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for g in self.items() {
            seq.serialize_element(&g)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Bundle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct BundleVisitor;
        impl<'de> Visitor<'de> for BundleVisitor {
            type Value = Bundle;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a list of item indices")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Bundle, A::Error> {
                let mut b = Bundle::EMPTY;
                while let Some(g) = seq.next_element::<usize>()? {
                    if g >= MAX_ITEMS {
                        return Err(de::Error::custom(format!("item {g} exceeds {MAX_ITEMS}")));
                    }
                    if b.contains(g) {
                        return Err(de::Error::custom(format!("item {g} listed twice")));
                    }
                    b.insert(g);
                }
                Ok(b)
            }
        }
        d.deserialize_seq(BundleVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ValuationDoc {
    Additive {
        #[serde(with = "rational_vec")]
        values: Vec<Value>,
    },
    PersonalizedBivalued {
        #[serde(with = "rational")]
        a: Value,
        #[serde(with = "rational")]
        b: Value,
        high: Bundle,
    },
    PairDemand {
        #[serde(with = "rational_vec")]
        values: Vec<Value>,
    },
    Table {
        #[serde(with = "rational_vec")]
        table: Vec<Value>,
    },
    BinaryTable {
        /// Masks of the bundles valued 1, increasing.
        ones: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub n: usize,
    pub m: usize,
    pub valuations: Vec<ValuationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub flags: Flags,
}

impl InstanceDocument {
    pub fn from_instance(inst: &Instance) -> Self {
        let valuations = inst
            .valuations()
            .iter()
            .map(|v| match v {
                Valuation::Additive { values } => ValuationDoc::Additive {
                    values: values.clone(),
                },
                Valuation::PersonalizedBivalued { a, b, high, .. } => {
                    ValuationDoc::PersonalizedBivalued {
                        a: *a,
                        b: *b,
                        high: *high,
                    }
                }
                Valuation::PairDemand { values } => ValuationDoc::PairDemand {
                    values: values.clone(),
                },
                Valuation::ExplicitTable { table } => ValuationDoc::Table {
                    table: table.clone(),
                },
                Valuation::BinaryTable { items, .. } => ValuationDoc::BinaryTable {
                    ones: (0..1u64 << items)
                        .filter(|&mask| v.eval(Bundle::from_mask(mask)) == Value::from_integer(1))
                        .collect(),
                },
            })
            .collect();
        InstanceDocument {
            n: inst.n(),
            m: inst.m(),
            valuations,
            labels: inst.labels().map(|l| l.to_vec()),
            flags: inst.flags(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.valuations.len() != self.n {
            return Err(Error::InvalidInstance(format!(
                "n = {} but {} valuations given",
                self.n,
                self.valuations.len()
            )));
        }
        let m = self.m;
        if m > MAX_ITEMS {
            return Err(Error::TooManyItems {
                items: m,
                cap: MAX_ITEMS,
            });
        }
        let valuations = self
            .valuations
            .iter()
            .enumerate()
            .map(|(agent, doc)| -> Result<Valuation> {
                Ok(match doc {
                    ValuationDoc::Additive { values } => Valuation::additive(values.clone()),
                    ValuationDoc::PersonalizedBivalued { a, b, high } => {
                        Valuation::bivalued(*a, *b, *high, m)
                    }
                    ValuationDoc::PairDemand { values } => Valuation::pair_demand(values.clone()),
                    ValuationDoc::Table { table } => Valuation::ExplicitTable {
                        table: table.clone(),
                    },
                    ValuationDoc::BinaryTable { ones } => {
                        if m > crate::TABLE_ITEM_CAP {
                            return Err(Error::TooManyItems {
                                items: m,
                                cap: crate::TABLE_ITEM_CAP,
                            });
                        }
                        if let Some(bad) = ones.iter().find(|&&mask| mask >> m != 0) {
                            return Err(Error::InvalidValuation {
                                agent,
                                reason: format!("mask {bad} exceeds m = {m}"),
                            });
                        }
                        Valuation::binary_from_fn(m, |s| ones.contains(&s.mask()))
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let inst = Instance::with_flags(m, valuations, self.flags)?;
        match &self.labels {
            Some(labels) => inst.with_labels(labels.clone()),
            None => Ok(inst),
        }
    }
}

/// Canonical JSON for an instance.
pub fn instance_to_json(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceDocument::from_instance(inst))
        .expect("instance documents always serialize");
    s.push('\n');
    s
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    let doc: InstanceDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_instance()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationDocument {
    pub bundles: Vec<Bundle>,
}

pub fn allocation_to_json(x: &Allocation) -> String {
    let mut s = serde_json::to_string(&AllocationDocument {
        bundles: x.bundles.clone(),
    })
    .expect("allocations always serialize");
    s.push('\n');
    s
}

pub fn allocation_from_json(text: &str) -> Result<Allocation> {
    let doc: AllocationDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Allocation::new(doc.bundles))
}

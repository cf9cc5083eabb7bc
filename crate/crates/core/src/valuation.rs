use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bundle::{Bundle, MAX_ITEMS};
use crate::error::{Error, Result};
use crate::{Value, TABLE_ITEM_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationClass {
    Additive,
    PersonalizedBivalued,
    PairDemand,
    Table,
    BinaryTable,
}

impl fmt::Display for ValuationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValuationClass::Additive => "additive",
            ValuationClass::PersonalizedBivalued => "personalized bivalued",
            ValuationClass::PairDemand => "pair-demand",
            ValuationClass::Table => "explicit table",
            ValuationClass::BinaryTable => "binary table",
        })
    }
}

/// A set function over `m` items, in one of five representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    /// `v(S) = sum of values[g] for g in S`.
    Additive { values: Vec<Value> },
    /// Additive with every item worth `a` (items in `high`) or `b` (everything else), `a > b >= 0`.
    PersonalizedBivalued {
        a: Value,
        b: Value,
        high: Bundle,
        items: usize,
    },
    /// `v(S)` is the sum of the two largest member values.
    PairDemand { values: Vec<Value> },
    /// Arbitrary set function, `table[mask]`.
    ExplicitTable { table: Vec<Value> },
    /// Arbitrary {0,1}-valued set function; bit `mask` of `ones` is `v(mask)`.
    BinaryTable { items: usize, ones: Vec<u64> },
}

impl Valuation {
    pub fn additive(values: Vec<Value>) -> Self {
        Valuation::Additive { values }
    }

    pub fn pair_demand(values: Vec<Value>) -> Self {
        Valuation::PairDemand { values }
    }

    pub fn bivalued(a: Value, b: Value, high: Bundle, items: usize) -> Self {
        Valuation::PersonalizedBivalued { a, b, high, items }
    }

    /// Materialises `f` over every bundle of `m` items.
    pub fn table_from_fn(m: usize, mut f: impl FnMut(Bundle) -> Value) -> Self {
        assert!(m <= TABLE_ITEM_CAP, "table valuations are capped at {TABLE_ITEM_CAP} items");
        let table = (0..1u64 << m).map(|mask| f(Bundle::from_mask(mask))).collect();
        Valuation::ExplicitTable { table }
    }

    pub fn binary_from_fn(m: usize, mut f: impl FnMut(Bundle) -> bool) -> Self {
        assert!(m <= TABLE_ITEM_CAP, "table valuations are capped at {TABLE_ITEM_CAP} items");
        let masks = 1usize << m;
        let mut ones = vec![0u64; masks.div_ceil(64)];
        for mask in 0..masks {
            if f(Bundle::from_mask(mask as u64)) {
                ones[mask / 64] |= 1 << (mask % 64);
            }
        }
        Valuation::BinaryTable { items: m, ones }
    }

    pub fn class(&self) -> ValuationClass {
        match self {
            Valuation::Additive { .. } => ValuationClass::Additive,
            Valuation::PersonalizedBivalued { .. } => ValuationClass::PersonalizedBivalued,
            Valuation::PairDemand { .. } => ValuationClass::PairDemand,
            Valuation::ExplicitTable { .. } => ValuationClass::Table,
            Valuation::BinaryTable { .. } => ValuationClass::BinaryTable,
        }
    }

    /// Number of items this valuation addresses.
    pub fn items(&self) -> usize {
        match self {
            Valuation::Additive { values } | Valuation::PairDemand { values } => values.len(),
            Valuation::PersonalizedBivalued { items, .. } | Valuation::BinaryTable { items, .. } => {
                *items
            }
            Valuation::ExplicitTable { table } => table.len().trailing_zeros() as usize,
        }
    }

    /// `v(S)`, rejecting bundles that reference items beyond this valuation's range.
    pub fn value(&self, bundle: Bundle) -> Result<Value> {
        let m = self.items();
        if !bundle.fits(m) {
            return Err(Error::InvalidBundle {
                mask: bundle.mask(),
                m,
            });
        }
        Ok(self.eval(bundle))
    }

    /// `v(S)` without the range check. Callers guarantee `bundle` fits.
    pub fn eval(&self, bundle: Bundle) -> Value {
        debug_assert!(bundle.fits(self.items()));
        match self {
            Valuation::Additive { values } => bundle.items().map(|g| values[g]).sum(),
            Valuation::PersonalizedBivalued { a, b, high, .. } => {
                let highs = (bundle & *high).len() as i64;
                let lows = (bundle - *high).len() as i64;
                *a * highs + *b * lows
            }
            Valuation::PairDemand { values } => {
                let mut top = [Value::zero(); 2];
                for g in bundle.items() {
                    let x = values[g];
                    if x > top[0] {
                        top[1] = top[0];
                        top[0] = x;
                    } else if x > top[1] {
                        top[1] = x;
                    }
                }
                top[0] + top[1]
            }
            Valuation::ExplicitTable { table } => table[bundle.mask() as usize],
            Valuation::BinaryTable { ones, .. } => {
                let mask = bundle.mask() as usize;
                Value::from_integer(((ones[mask / 64] >> (mask % 64)) & 1) as i64)
            }
        }
    }

    pub fn singleton(&self, item: usize) -> Value {
        self.eval(Bundle::singleton(item))
    }

    /// Whether every item value is exactly `a` or `b` with `b | a` or `b = 0`.
    pub fn is_factored(&self) -> bool {
        match self {
            Valuation::PersonalizedBivalued { a, b, .. } => {
                b.is_zero() || (*a / *b).is_integer()
            }
            _ => false,
        }
    }

    /// Whether the valuation is additive (values of bundles are sums of singletons).
    pub fn is_additive(&self) -> bool {
        matches!(
            self,
            Valuation::Additive { .. } | Valuation::PersonalizedBivalued { .. }
        )
    }

    /// All `2^m` values, indexed by mask.
    pub fn materialize(&self) -> Result<Vec<Value>> {
        let m = self.items();
        if m > TABLE_ITEM_CAP {
            return Err(Error::TooManyItems {
                items: m,
                cap: TABLE_ITEM_CAP,
            });
        }
        if let Valuation::ExplicitTable { table } = self {
            return Ok(table.clone());
        }
        Ok((0..1u64 << m)
            .map(|mask| self.eval(Bundle::from_mask(mask)))
            .collect())
    }

    /// True when `S ⊆ T` implies `v(S) <= v(T)`. Checks single-item extensions only,
    /// which is sufficient by transitivity.
    pub fn is_monotone(&self) -> Result<bool> {
        let m = self.items();
        let table = self.materialize()?;
        for mask in 0..table.len() {
            for g in 0..m {
                let bigger = mask | (1 << g);
                if bigger != mask && table[mask] > table[bigger] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Structural checks that do not depend on the surrounding instance.
    pub fn check(&self) -> std::result::Result<(), String> {
        let m = self.items();
        if m > MAX_ITEMS {
            return Err(format!("{m} items exceed the bundle width {MAX_ITEMS}"));
        }
        match self {
            Valuation::Additive { values } | Valuation::PairDemand { values } => {
                if let Some(g) = values.iter().position(|v| v.is_negative()) {
                    return Err(format!("item {g} has negative value {}", values[g]));
                }
            }
            Valuation::PersonalizedBivalued { a, b, high, items } => {
                if b.is_negative() || a <= b {
                    return Err(format!("need a > b >= 0, got a = {a}, b = {b}"));
                }
                if !high.fits(*items) {
                    return Err(format!("high items {high} exceed m = {items}"));
                }
            }
            Valuation::ExplicitTable { table } => {
                if !table.len().is_power_of_two() {
                    return Err(format!("table length {} is not a power of two", table.len()));
                }
                if m > TABLE_ITEM_CAP {
                    return Err(format!("table over {m} items exceeds cap {TABLE_ITEM_CAP}"));
                }
            }
            Valuation::BinaryTable { items, ones } => {
                if *items > TABLE_ITEM_CAP {
                    return Err(format!("table over {items} items exceeds cap {TABLE_ITEM_CAP}"));
                }
                if ones.len() != (1usize << items).div_ceil(64) {
                    return Err(format!("binary table has {} words for m = {items}", ones.len()));
                }
            }
        }
        Ok(())
    }
}

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::valuation::Valuation;
use crate::{frac, int, TABLE_ITEM_CAP};

fn labels(names: impl IntoIterator<Item = String>) -> Vec<String> {
    names.into_iter().collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Layout of the star/common construction for `n` agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarsLayout {
    pub n: usize,
    /// Half the number of common items; the smallest with `C(2k, k) >= 2n`.
    pub k: usize,
    pub m: usize,
    pub stars: Bundle,
    pub commons: Bundle,
    /// `A_i` per agent; `B_i` is `commons − A_i`.
    pub special: Vec<Bundle>,
}

impl StarsLayout {
    pub fn complement(&self, agent: usize) -> Bundle {
        self.commons - self.special[agent]
    }

    /// Stars to agents `0..n-2`, then the commons split `(A_0, B_0)` between the last two agents.
    pub fn mms_allocation(&self) -> crate::Allocation {
        let mut bundles: Vec<Bundle> = self.stars.items().map(Bundle::singleton).collect();
        bundles.push(self.special[0]);
        bundles.push(self.complement(0));
        crate::Allocation::new(bundles)
    }
}

/// `k`, `m` and the canonical `(A_i, B_i)` choice for the star construction.
///
/// `A_i` is the `i`-th `k`-subset of the commons that contains the first common item,
/// in lexicographic order. All `A_i` share that item, so no `A_i` equals any `B_j`.
pub fn stars_parameters(n: usize) -> Result<StarsLayout> {
    if n < 2 {
        return Err(Error::InvalidArgument("the star construction needs n >= 2".into()));
    }
    let mut k = 1usize;
    while binomial(2 * k as u64, k as u64) < 2 * n as u64 {
        k += 1;
    }
    let m = 2 * k + n - 2;
    if m > TABLE_ITEM_CAP {
        return Err(Error::TooManyItems {
            items: m,
            cap: TABLE_ITEM_CAP,
        });
    }
    let stars = Bundle::full(n - 2);
    let commons = Bundle::full(m) - stars;
    let first_common = n - 2;

    // lexicographic (k-1)-subsets of the remaining 2k-1 commons
    let mut special = Vec::with_capacity(n);
    let mut combo: Vec<usize> = (1..k).collect();
    loop {
        let mut a = Bundle::singleton(first_common);
        for &c in &combo {
            a.insert(first_common + c);
        }
        special.push(a);
        if special.len() == n {
            break;
        }
        // next combination of size k-1 from 1..2k
        let top = 2 * k - 1;
        let len = combo.len();
        let mut idx = len;
        loop {
            if idx == 0 {
                unreachable!("C(2k-1, k-1) >= n by the choice of k");
            }
            idx -= 1;
            if combo[idx] < top - (len - 1 - idx) {
                break;
            }
        }
        combo[idx] += 1;
        for j in idx + 1..len {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok(StarsLayout {
        n,
        k,
        m,
        stars,
        commons,
        special,
    })
}

/// `n` agents, `n − 2` star items and `2k` common items, with no PMMS allocation
/// but an MMS allocation. Rule precedence per bundle: the agent's own split halves
/// (`k+1`), then star-plus-anything (`2k`), then a lone star (`k`), then cardinality.
pub fn gen_nonexistence_stars(n: usize) -> Result<Instance> {
    let layout = stars_parameters(n)?;
    let k = layout.k as i64;
    let valuations = (0..n)
        .map(|agent| {
            let a = layout.special[agent];
            let b = layout.complement(agent);
            Valuation::table_from_fn(layout.m, |s| {
                if s == a || s == b {
                    int(k + 1)
                } else if !(s & layout.stars).is_empty() && s.len() >= 2 {
                    int(2 * k)
                } else if !(s & layout.stars).is_empty() {
                    int(k)
                } else {
                    int(s.len() as i64)
                }
            })
        })
        .collect();
    let names = (1..=n - 2)
        .map(|j| format!("s{j}"))
        .chain((1..=2 * layout.k).map(|j| format!("c{j}")));
    Instance::new(layout.m, valuations)?.with_labels(labels(names))
}

/// Values of the two table agents on two-item bundles, keyed by 1-based item pairs.
const SEPARATION_PAIRS: [((usize, usize), i64, i64); 15] = [
    ((1, 2), 6, 3),
    ((1, 3), 5, 5),
    ((1, 4), 2, 2),
    ((1, 5), 2, 2),
    ((1, 6), 4, 3),
    ((2, 3), 2, 2),
    ((2, 4), 3, 2),
    ((2, 5), 5, 5),
    ((2, 6), 4, 3),
    ((3, 4), 4, 2),
    ((3, 5), 6, 4),
    ((3, 6), 5, 2),
    ((4, 5), 4, 3),
    ((4, 6), 6, 5),
    ((5, 6), 3, 4),
];

/// Three agents, six items, no PMMS allocation. Agents 0 and 1 value singletons at 1,
/// bundles of three or more at 7, and pairs per a fixed table; agent 2 is additive
/// with item `j` (1-based) worth `100 + j`.
pub fn gen_separation3() -> Instance {
    let table_agent = |column: usize| {
        Valuation::table_from_fn(6, |s| match s.len() {
            0 => int(0),
            1 => int(1),
            2 => {
                let items: Vec<usize> = s.items().map(|g| g + 1).collect();
                let row = SEPARATION_PAIRS
                    .iter()
                    .find(|(pair, _, _)| *pair == (items[0], items[1]))
                    .expect("every pair is tabulated");
                int(if column == 0 { row.1 } else { row.2 })
            }
            _ => int(7),
        })
    };
    let additive = Valuation::additive((1..=6).map(|j| int(100 + j)).collect());
    Instance::new(6, vec![table_agent(0), table_agent(1), additive])
        .and_then(|inst| inst.with_labels(labels((1..=6).map(|j| j.to_string()))))
        .expect("fixed instance is valid")
}

/// Two personalized bivalued agents (5/1 and 3/1) sharing the high items `g1, g2`.
/// Both Nash-welfare maximisers violate EFX.
pub fn gen_mnw_counterexample() -> Instance {
    let high = Bundle::from_items([0, 1]);
    Instance::new(
        4,
        vec![
            Valuation::bivalued(int(5), int(1), high, 4),
            Valuation::bivalued(int(3), int(1), high, 4),
        ],
    )
    .and_then(|inst| inst.with_labels(labels((1..=4).map(|j| format!("g{j}")))))
    .expect("fixed instance is valid")
}

/// Two identical additive agents over three items worth `0, 0, 2`.
pub fn gen_pmms_not_efx_example() -> Instance {
    let v = Valuation::additive(vec![int(0), int(0), int(2)]);
    Instance::new(3, vec![v.clone(), v])
        .and_then(|inst| inst.with_labels(labels((1..=3).map(|j| j.to_string()))))
        .expect("fixed instance is valid")
}

/// Four bivalued agents with `a = 5/2, 3, 4, 5` and `b = 1` over items
/// `x, y, z1..z16`: agents 0 and 1 value only `x` high, agents 2 and 3 only `y`.
pub fn gen_table1_example() -> Instance {
    let x = Bundle::singleton(0);
    let y = Bundle::singleton(1);
    let highs = [
        (frac(5, 2), x),
        (int(3), x),
        (int(4), y),
        (int(5), y),
    ];
    let valuations = highs
        .iter()
        .map(|&(a, high)| Valuation::bivalued(a, int(1), high, 18))
        .collect();
    let names = ["x".to_string(), "y".to_string()]
        .into_iter()
        .chain((1..=16).map(|j| format!("z{j}")));
    Instance::new(18, valuations)
        .and_then(|inst| inst.with_labels(labels(names)))
        .expect("fixed instance is valid")
}

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Maximum number of items any bundle can address.
pub const MAX_ITEMS: usize = 64;

/// A set of items stored as a bitmask; bit `g` set means item `g` is in the bundle.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bundle(u64);

impl Bundle {
    pub const EMPTY: Bundle = Bundle(0);

    pub const fn from_mask(mask: u64) -> Self {
        Bundle(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    /// All items `0..m`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_ITEMS, "at most {MAX_ITEMS} items");
        if m == MAX_ITEMS {
            Bundle(u64::MAX)
        } else {
            Bundle((1u64 << m) - 1)
        }
    }

    pub fn singleton(item: usize) -> Self {
        assert!(item < MAX_ITEMS);
        Bundle(1u64 << item)
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items
            .into_iter()
            .fold(Bundle::EMPTY, |acc, g| acc | Bundle::singleton(g))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, item: usize) -> bool {
        item < MAX_ITEMS && self.0 & (1u64 << item) != 0
    }

    pub fn insert(&mut self, item: usize) {
        *self = *self | Bundle::singleton(item);
    }

    pub fn remove(&mut self, item: usize) {
        if item < MAX_ITEMS {
            self.0 &= !(1u64 << item);
        }
    }

    pub fn with(self, item: usize) -> Self {
        self | Bundle::singleton(item)
    }

    pub fn without(self, item: usize) -> Self {
        let mut b = self;
        b.remove(item);
        b
    }

    pub fn is_subset(self, other: Bundle) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Bundle) -> bool {
        self.0 & other.0 == 0
    }

    /// True when every set bit is below `m`.
    pub fn fits(self, m: usize) -> bool {
        self.is_subset(Bundle::full(m))
    }

    /// Lowest item in the bundle.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Items in increasing order.
    pub fn items(self) -> Items {
        Items(self.0)
    }

    /// Every subset of this bundle, starting from the bundle itself and ending with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            whole: self.0,
            next: Some(self.0),
        }
    }
}

impl BitOr for Bundle {
    type Output = Bundle;
    fn bitor(self, rhs: Bundle) -> Bundle {
        Bundle(self.0 | rhs.0)
    }
}

impl BitAnd for Bundle {
    type Output = Bundle;
    fn bitand(self, rhs: Bundle) -> Bundle {
        Bundle(self.0 & rhs.0)
    }
}

impl Sub for Bundle {
    type Output = Bundle;
    fn sub(self, rhs: Bundle) -> Bundle {
        Bundle(self.0 & !rhs.0)
    }
}

impl Not for Bundle {
    type Output = Bundle;
    fn not(self) -> Bundle {
        Bundle(!self.0)
    }
}

impl FromIterator<usize> for Bundle {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Bundle::from_items(iter)
    }
}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, g) in self.items().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

pub struct Items(u64);

impl Iterator for Items {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let g = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Items {}

pub struct Subsets {
    whole: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Bundle;

    fn next(&mut self) -> Option<Bundle> {
        let current = self.next?;
        self.next = (current != 0).then(|| (current - 1) & self.whole);
        Some(Bundle(current))
    }
}

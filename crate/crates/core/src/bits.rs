//! Fixed-universe vertex bitsets used by the exact solvers.
//!
//! Graphs up to 64 (resp. 128) vertices run on a single machine word; larger
//! graphs fall back to a heap-allocated word vector. Solvers are generic over
//! [`Bits`] and dispatched once per call through [`with_bits!`].

pub trait Bits: Clone + Eq + Send + Sync + std::fmt::Debug {
    /// Empty set over a universe of `n` elements.
    fn empty(n: usize) -> Self;
    fn insert(&mut self, i: usize);
    fn remove(&mut self, i: usize);
    fn contains(&self, i: usize) -> bool;
    fn union_with(&mut self, other: &Self);
    fn intersect_with(&mut self, other: &Self);
    fn difference_with(&mut self, other: &Self);
    fn intersects(&self, other: &Self) -> bool;
    fn count(&self) -> usize;
    fn count_common(&self, other: &Self) -> usize;
    fn is_empty(&self) -> bool;
    /// Calls `f` on every member in ascending order.
    fn for_each(&self, f: impl FnMut(usize));

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    fn members(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count());
        self.for_each(|i| out.push(i));
        out
    }
}

macro_rules! word_bits {
    ($t:ty, $bits:expr) => {
        impl Bits for $t {
            #[inline]
            fn empty(n: usize) -> Self {
                debug_assert!(n <= $bits);
                0
            }
            #[inline]
            fn insert(&mut self, i: usize) {
                *self |= 1 << i;
            }
            #[inline]
            fn remove(&mut self, i: usize) {
                *self &= !(1 << i);
            }
            #[inline]
            fn contains(&self, i: usize) -> bool {
                (*self >> i) & 1 == 1
            }
            #[inline]
            fn union_with(&mut self, other: &Self) {
                *self |= *other;
            }
            #[inline]
            fn intersect_with(&mut self, other: &Self) {
                *self &= *other;
            }
            #[inline]
            fn difference_with(&mut self, other: &Self) {
                *self &= !*other;
            }
            #[inline]
            fn intersects(&self, other: &Self) -> bool {
                *self & *other != 0
            }
            #[inline]
            fn count(&self) -> usize {
                self.count_ones() as usize
            }
            #[inline]
            fn count_common(&self, other: &Self) -> usize {
                (*self & *other).count_ones() as usize
            }
            #[inline]
            fn is_empty(&self) -> bool {
                *self == 0
            }
            #[inline]
            fn for_each(&self, mut f: impl FnMut(usize)) {
                let mut w = *self;
                while w != 0 {
                    let i = w.trailing_zeros() as usize;
                    f(i);
                    w &= w - 1;
                }
            }
        }
    };
}

word_bits!(u64, 64);
word_bits!(u128, 128);

/// Bitset for graphs beyond 128 vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WideBits(Vec<u64>);

impl Bits for WideBits {
    fn empty(n: usize) -> Self {
        WideBits(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn contains(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }
    fn union_with(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }
    fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= *b;
        }
    }
    fn difference_with(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !*b;
        }
    }
    fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn count_common(&self, other: &Self) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn for_each(&self, mut f: impl FnMut(usize)) {
        for (k, &word) in self.0.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let i = w.trailing_zeros() as usize;
                f(k * 64 + i);
                w &= w - 1;
            }
        }
    }
}

/// Runs `$body` with the type alias `$b` bound to the narrowest [`Bits`]
/// implementation able to hold `$n` elements.
macro_rules! with_bits {
    ($n:expr, $b:ident => $body:expr) => {{
        let n: usize = $n;
        if n <= 64 {
            type $b = u64;
            $body
        } else if n <= 128 {
            type $b = u128;
            $body
        } else {
            type $b = $crate::bits::WideBits;
            $body
        }
    }};
}
pub(crate) use with_bits;

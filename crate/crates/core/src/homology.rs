//! Exact reduced simplicial homology over GF(2) and the rationals.
//!
//! Ranks of boundary maps come from sparse column reduction in the
//! dimension-then-lexicographic order, skipping columns already known to
//! reduce to zero (clearing). Rational columns are kept fraction-free with
//! machine integers and redone with big integers on overflow.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Default cap on the number of simplices of a complex whose homology is
/// computed.
pub const DEFAULT_HOMOLOGY_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Gf2,
    Rational,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Gf2 => "gf2",
            Field::Rational => "q",
        }
    }
}

/// Reduced Betti numbers `b̃_0 ..= b̃_dim`; empty for the empty complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub field: Field,
    pub reduced_betti: Vec<usize>,
}

impl BettiVector {
    pub fn get(&self, k: usize) -> usize {
        self.reduced_betti.get(k).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0)
    }

    /// `1 + Σ (-1)^k b̃_k`, which equals the Euler characteristic for a
    /// non-empty complex.
    pub fn euler_from_betti(&self) -> i64 {
        1 + self
            .reduced_betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum::<i64>()
    }
}

/// Oriented boundary matrices with the augmentation `∂_0`.
///
/// Column `j` of `boundary(k)` lists `(row, sign)` for the facets of the
/// `j`-th `k`-simplex, rows indexing `(k-1)`-simplices; `boundary(0)` maps
/// every vertex to the single row of the empty simplex.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    shape: Vec<usize>,
    boundaries: Vec<Vec<Vec<(u32, i8)>>>,
}

impl ChainComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let shape = k.f_vector();
        let mut boundaries = Vec::with_capacity(shape.len());
        for d in 0..shape.len() {
            boundaries.push(k.level(d).iter().map(|s| facet_column(k, s)).collect());
        }
        ChainComplex { shape, boundaries }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn boundary(&self, k: usize) -> &[Vec<(u32, i8)>] {
        &self.boundaries[k]
    }

    /// Checks `∂_{k-1} ∘ ∂_k = 0` exactly for every `k`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        for k in 1..self.boundaries.len() {
            let lower = &self.boundaries[k - 1];
            for col in &self.boundaries[k] {
                let mut acc: alloc::collections::BTreeMap<u32, i64> = Default::default();
                for &(r, s) in col {
                    for &(r2, s2) in &lower[r as usize] {
                        *acc.entry(r2).or_default() += s as i64 * s2 as i64;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn facet_column(k: &SimplicialComplex, s: &crate::complex::Simplex) -> Vec<(u32, i8)> {
    if s.dim() == 0 {
        return vec![(0, 1)];
    }
    let below = k.level(s.dim() - 1);
    let mut col: Vec<(u32, i8)> = s
        .facets()
        .enumerate()
        .map(|(i, f)| {
            let r = below.binary_search(&f).expect("complex is closed") as u32;
            (r, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect();
    col.sort_unstable();
    col
}

fn check_budget(k: &SimplicialComplex, budget: usize) -> Result<()> {
    let n = k.num_simplices();
    if n > budget {
        return Err(Error::Budget {
            resource: "homology simplex",
            limit: budget,
            reached: n,
        });
    }
    Ok(())
}

/// Ranks of `∂_0 ..= ∂_dim` over `field`.
pub fn boundary_ranks(k: &SimplicialComplex, field: Field, budget: usize) -> Result<Vec<usize>> {
    check_budget(k, budget)?;
    Ok(match field {
        Field::Gf2 => gf2_ranks(k),
        Field::Rational => rational_ranks::<i64>(k).unwrap_or_else(|| {
            rational_ranks::<BigInt>(k).expect("big integers do not overflow")
        }),
    })
}

pub fn reduced_betti(k: &SimplicialComplex, field: Field, budget: usize) -> Result<BettiVector> {
    let ranks = boundary_ranks(k, field, budget)?;
    let f = k.f_vector();
    let reduced_betti = (0..f.len())
        .map(|d| f[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect();
    Ok(BettiVector {
        field,
        reduced_betti,
    })
}

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.f_vector()
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// How far reduced homology vanishes, over both fields at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologicalConnectivity {
    Empty,
    /// `b̃_i = 0` for all `i <= m` but not for `m + 1`; `-1` means
    /// non-empty and disconnected.
    Through(i64),
    /// All reduced homology vanishes.
    Acyclic,
}

impl HomologicalConnectivity {
    /// Whether reduced homology vanishes in every degree `<= m`.
    pub fn vanishes_through(self, m: i64) -> bool {
        match self {
            HomologicalConnectivity::Empty => m < -1,
            HomologicalConnectivity::Through(t) => m <= t,
            HomologicalConnectivity::Acyclic => true,
        }
    }

    pub fn from_betti(bettis: &[&BettiVector]) -> Self {
        let len = bettis.iter().map(|b| b.reduced_betti.len()).max().unwrap_or(0);
        if len == 0 {
            return HomologicalConnectivity::Empty;
        }
        match (0..len).find(|&i| bettis.iter().any(|b| b.get(i) != 0)) {
            Some(i) => HomologicalConnectivity::Through(i as i64 - 1),
            None => HomologicalConnectivity::Acyclic,
        }
    }
}

pub fn homological_connectivity(k: &SimplicialComplex, budget: usize) -> Result<HomologicalConnectivity> {
    let a = reduced_betti(k, Field::Gf2, budget)?;
    let b = reduced_betti(k, Field::Rational, budget)?;
    Ok(HomologicalConnectivity::from_betti(&[&a, &b]))
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn gf2_ranks(k: &SimplicialComplex) -> Vec<usize> {
    let f = k.f_vector();
    let mut ranks = vec![0; f.len()];
    if f.is_empty() {
        return ranks;
    }
    ranks[0] = 1;
    let mut cleared: Vec<bool> = Vec::new();
    for d in (1..f.len()).rev() {
        let below = k.level(d - 1);
        let mut next_cleared = vec![false; below.len()];
        let mut by_low: Vec<Option<Vec<u32>>> = vec![None; below.len()];
        for (j, s) in k.level(d).iter().enumerate() {
            if cleared.get(j).copied().unwrap_or(false) {
                continue;
            }
            let mut col: Vec<u32> = s
                .facets()
                .map(|f| below.binary_search(&f).unwrap() as u32)
                .collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match &by_low[low as usize] {
                    Some(p) => col = symmetric_difference(&col, p),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                next_cleared[low as usize] = true;
                by_low[low as usize] = Some(col);
                ranks[d] += 1;
            }
        }
        cleared = next_cleared;
    }
    ranks
}

/// Integer coefficients for fraction-free elimination. Arithmetic
/// returns `None` on overflow.
trait Coeff: Clone + PartialEq + Sized {
    fn from_sign(s: i8) -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn is_one(&self) -> bool;
}

impl Coeff for i64 {
    fn from_sign(s: i8) -> Self {
        s as i64
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Coeff for BigInt {
    fn from_sign(s: i8) -> Self {
        BigInt::from(s)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

type Column<C> = Vec<(u32, C)>;

/// `b·x − a·y` for columns `x`, `y`, dropping zeros.
fn combine<C: Coeff>(x: &Column<C>, a: &C, y: &Column<C>, b: &C) -> Option<Column<C>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (row, v) = if take_x {
            let r = (x[i].0, x[i].1.mul(b)?);
            i += 1;
            r
        } else if take_y {
            let r = (y[j].0, y[j].1.mul(a)?.neg()?);
            j += 1;
            r
        } else {
            let r = (x[i].0, x[i].1.mul(b)?.sub(&y[j].1.mul(a)?)?);
            i += 1;
            j += 1;
            r
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Some(out)
}

fn normalize<C: Coeff>(col: &mut Column<C>) -> Option<()> {
    let Some(first) = col.first() else { return Some(()) };
    let mut g = first.1.clone();
    for (_, v) in col.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if g.is_negative() {
        g = g.neg()?;
    }
    if !g.is_one() {
        for (_, v) in col.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    Some(())
}

fn rational_ranks<C: Coeff>(k: &SimplicialComplex) -> Option<Vec<usize>> {
    let f = k.f_vector();
    let mut ranks = vec![0; f.len()];
    if f.is_empty() {
        return Some(ranks);
    }
    ranks[0] = 1;
    let mut cleared: Vec<bool> = Vec::new();
    for d in (1..f.len()).rev() {
        let below = k.level(d - 1).len();
        let mut next_cleared = vec![false; below];
        let mut by_low: Vec<Option<Column<C>>> = vec![None; below];
        for (j, s) in k.level(d).iter().enumerate() {
            if cleared.get(j).copied().unwrap_or(false) {
                continue;
            }
            let mut col: Column<C> = facet_column(k, s)
                .into_iter()
                .map(|(r, sg)| (r, C::from_sign(sg)))
                .collect();
            while let Some((low, a)) = col.last().cloned() {
                match &by_low[low as usize] {
                    Some(p) => {
                        let b = p.last().unwrap().1.clone();
                        col = combine(&col, &a, p, &b)?;
                        normalize(&mut col)?;
                    }
                    None => break,
                }
            }
            if let Some((low, _)) = col.last() {
                let low = *low as usize;
                next_cleared[low] = true;
                by_low[low] = Some(col);
                ranks[d] += 1;
            }
        }
        cleared = next_cleared;
    }
    Some(ranks)
}

//! Integer polynomials in `z` and the partial-dual polynomial.
//!
//! `Polynomial<T>` is generic over its coefficient ring; the crate root
//! fixes `T = BigInt` for exact verification work.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{FromPrimitive, Num, Signed};
use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::error::PolyError;
use crate::pdual::partial_dual_mask;
use crate::surface::euler_genus;

/// Largest chord count enumerated unless the caller raises the cap.
pub const DEFAULT_CAP: usize = 20;

/// Sparse polynomial: exponent -> non-zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial<T> {
    coeffs: BTreeMap<u32, T>,
}

impl<T: Num + Clone> Polynomial<T> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn monomial(coeff: T, exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: u32) -> T {
        self.coeffs.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Non-zero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, exp: u32, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(T::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn scale(&self, k: T) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e, c.clone() * k.clone()))
                .collect(),
        }
    }

    /// Value at `z = x`.
    pub fn eval(&self, x: T) -> T {
        let mut acc = T::zero();
        let mut power = T::one();
        let mut at = 0;
        for (&e, c) in &self.coeffs {
            while at < e {
                power = power * x.clone();
                at += 1;
            }
            acc = acc + c.clone() * power.clone();
        }
        acc
    }
}

impl<T: Num + Clone> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        Polynomial::add(self, rhs)
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        self.scale(-T::one())
    }
}

impl<T: Num + Clone + Neg<Output = T>> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self.add(&-rhs)
    }
}

/// Renders as `c0 + c1*z + c2*z^2`, ascending, zero terms omitted; `0` for the zero polynomial.
/// A negative coefficient after the first term is written as `- |c|`.
impl<T: Num + Clone + Signed + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_negative() {
                write!(f, " - {}", c.abs())?;
            } else {
                write!(f, " + {c}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("*z")?,
                _ => write!(f, "*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl<T: Num + Clone + fmt::Display> Polynomial<T> {
    /// `{"coeffs": {"0": c0, "2": c2, ...}}` with exact integer literals.
    pub fn to_json_value(&self) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let n: serde_json::Number = c.to_string().parse().expect("integer coefficient");
                (e.to_string(), serde_json::Value::Number(n))
            })
            .collect();
        serde_json::json!({ "coeffs": coeffs })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// How subsets are visited when enumerating partial duals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Build `G^A` from `G` for every subset `A`.
    Naive,
    /// Walk subsets in reflected Gray-code order, taking one single-chord
    /// dual of the previous partial dual per step.
    GrayCode,
}

/// Number of subsets handled per parallel task.
const CHUNK_BITS: u32 = 10;

/// Partial-dual polynomial with the default cap and the Gray-code walk.
pub fn partial_dual_polynomial<T>(d: &Diagram) -> Result<Polynomial<T>, PolyError>
where
    T: Num + Clone + FromPrimitive,
{
    partial_dual_polynomial_with(d, DEFAULT_CAP, Enumeration::GrayCode)
}

/// Sum over all chord subsets `A` of `z^{euler_genus(G^A)}`.
pub fn partial_dual_polynomial_with<T>(d: &Diagram, cap: usize, mode: Enumeration) -> Result<Polynomial<T>, PolyError>
where
    T: Num + Clone + FromPrimitive,
{
    let e = d.num_chords();
    if e > cap || e >= 64 {
        return Err(PolyError::CapExceeded { chords: e, cap });
    }
    let total: u64 = 1 << e;
    let chunk_bits = CHUNK_BITS.min(e as u32);
    let chunk = 1u64 << chunk_bits;
    let counts: Vec<u64> = (0..total / chunk)
        .into_par_iter()
        .map(|k| {
            let range = k * chunk..(k + 1) * chunk;
            match mode {
                Enumeration::Naive => count_naive(d, range),
                Enumeration::GrayCode => count_gray(d, range),
            }
        })
        .reduce(Vec::new, merge_counts);
    Ok(Polynomial::from_terms(
        counts
            .into_iter()
            .enumerate()
            .map(|(g, n)| (g as u32, T::from_u64(n).expect("count fits coefficient type"))),
    ))
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn tally(counts: &mut Vec<u64>, genus: usize) {
    if counts.len() <= genus {
        counts.resize(genus + 1, 0);
    }
    counts[genus] += 1;
}

fn mask_of(bits: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

fn count_naive(d: &Diagram, range: std::ops::Range<u64>) -> Vec<u64> {
    let n = d.num_chords();
    let mut counts = Vec::new();
    for bits in range {
        tally(&mut counts, euler_genus(&partial_dual_mask(d, &mask_of(bits, n))));
    }
    counts
}

/// Visits the Gray codes `gray(i)` for `i` in `range`. Consecutive codes
/// differ in one chord, so each step is a single-chord partial dual of the
/// previous diagram.
fn count_gray(d: &Diagram, range: std::ops::Range<u64>) -> Vec<u64> {
    let n = d.num_chords();
    let gray = |i: u64| i ^ (i >> 1);
    let mut counts = Vec::new();
    let mut current = partial_dual_mask(d, &mask_of(gray(range.start), n));
    tally(&mut counts, euler_genus(&current));
    let mut single = vec![false; n];
    for i in range.start + 1..range.end {
        let flip = (gray(i) ^ gray(i - 1)).trailing_zeros() as usize;
        single[flip] = true;
        current = partial_dual_mask(&current, &single);
        single[flip] = false;
        tally(&mut counts, euler_genus(&current));
    }
    counts
}

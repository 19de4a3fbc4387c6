//! Coordinate-permutation groups `S_{I^(1)} × … × S_{I^(R)}` acting on
//! multi-indices: orbit representatives, stabilizer counts, the canonical
//! binary index set and the symmetrizer.
//!
//! Orbits are handled as multisets per group, so nothing here ever walks
//! the full group except [`InvariancePattern::permutations`], which exists
//! for brute-force checks on small dimensions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::korobov::{FourierPolynomial, MultiIndex};
use crate::scalar::Real;

/// Default bound on the number of materialized multi-indices.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 26;

/// Disjoint groups of coordinates under which functions are invariant.
///
/// Coordinates are 0-based internally and 1-based in every external form
/// (JSON, CLI shorthand, `Display`).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PatternWire", into = "PatternWire")]
pub struct InvariancePattern {
    dim: usize,
    groups: Vec<Vec<usize>>,
    group_of: Vec<Option<usize>>,
}

impl InvariancePattern {
    /// `groups` are 1-based coordinate lists.
    pub fn new(dim: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPattern("dimension must be at least 1".into()));
        }
        let mut group_of = vec![None; dim];
        let mut normalized = Vec::with_capacity(groups.len());
        for group in groups {
            if group.is_empty() {
                return Err(Error::InvalidPattern("empty group".into()));
            }
            let mut g: Vec<usize> = Vec::with_capacity(group.len());
            for c in group {
                if c == 0 || c > dim {
                    return Err(Error::InvalidPattern(format!(
                        "coordinate {c} outside 1..={dim}"
                    )));
                }
                g.push(c - 1);
            }
            g.sort_unstable();
            if g.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPattern("duplicate coordinate within a group".into()));
            }
            normalized.push(g);
        }
        normalized.sort();
        for (gi, g) in normalized.iter().enumerate() {
            for &c in g {
                if group_of[c].is_some() {
                    return Err(Error::InvalidPattern(format!(
                        "coordinate {} appears in two groups",
                        c + 1
                    )));
                }
                group_of[c] = Some(gi);
            }
        }
        Ok(Self {
            dim,
            groups: normalized,
            group_of,
        })
    }

    /// No invariance (`I = ∅`).
    pub fn trivial(dim: usize) -> Result<Self> {
        Self::new(dim, vec![])
    }

    /// Invariance under all permutations of all coordinates.
    pub fn full(dim: usize) -> Result<Self> {
        Self::new(dim, vec![(1..=dim).collect()])
    }

    /// One group (1-based coordinates); an empty list gives the trivial pattern.
    pub fn single(dim: usize, coords: Vec<usize>) -> Result<Self> {
        if coords.is_empty() {
            Self::trivial(dim)
        } else {
            Self::new(dim, vec![coords])
        }
    }

    /// Parses the `--invariant` shorthand, e.g. `1-3,5`.
    pub fn parse_single(dim: usize, spec: &str) -> Result<Self> {
        Self::single(dim, parse_coordinate_list(spec)?)
    }

    /// Parses the `--groups` shorthand, e.g. `1-3;4,7`.
    pub fn parse_groups(dim: usize, spec: &str) -> Result<Self> {
        let groups = spec
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(parse_coordinate_list)
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, groups)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Groups as sorted 0-based coordinate lists.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn groups_one_based(&self) -> Vec<Vec<usize>> {
        self.groups
            .iter()
            .map(|g| g.iter().map(|c| c + 1).collect())
            .collect()
    }

    /// Group containing the 0-based coordinate `m`, if any.
    pub fn group_of(&self, m: usize) -> Option<usize> {
        self.group_of[m]
    }

    /// At most one group.
    pub fn is_single_group(&self) -> bool {
        self.groups.len() <= 1
    }

    /// `Σ_r #I^(r)`.
    pub fn invariant_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    /// Coordinates of the single group (empty for the trivial pattern).
    pub(crate) fn single_group(&self) -> Result<&[usize]> {
        match self.groups.len() {
            0 => Ok(&[]),
            1 => Ok(&self.groups[0]),
            r => Err(Error::Unsupported(format!(
                "operation needs at most one invariance group, pattern has {r}"
            ))),
        }
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }

    /// `#S = Π_r (#I^(r))!`.
    pub fn group_order(&self) -> BigUint {
        self.groups.iter().map(|g| factorial(g.len())).product()
    }

    /// `N* = Π_r (#I^(r) + 1) · 2^{d - Σ_r #I^(r)}`.
    pub fn n_star(&self) -> BigUint {
        let free = self.dim - self.invariant_count();
        let blocks: BigUint = self.groups.iter().map(|g| BigUint::from(g.len() + 1)).product();
        blocks << free
    }

    /// Orbit representative: entries inside each group sorted non-decreasingly.
    pub fn canonicalize(&self, k: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(k.dim())?;
        let mut out = k.as_slice().to_vec();
        let mut buf = Vec::new();
        for g in &self.groups {
            buf.clear();
            buf.extend(g.iter().map(|&c| out[c]));
            buf.sort_unstable();
            for (&c, &v) in g.iter().zip(&buf) {
                out[c] = v;
            }
        }
        Ok(MultiIndex::from_vec_unchecked(out))
    }

    pub fn orbit_stats(&self, k: &MultiIndex) -> Result<OrbitStats> {
        let canonical = self.canonicalize(k)?;
        let mut stabilizer = BigUint::one();
        for g in &self.groups {
            // in canonical form equal values within a group are adjacent
            let mut run = 1usize;
            for w in g.windows(2) {
                if canonical[w[0]] == canonical[w[1]] {
                    run += 1;
                } else {
                    stabilizer *= factorial(run);
                    run = 1;
                }
            }
            stabilizer *= factorial(run);
        }
        let orbit_size = self.group_order() / &stabilizer;
        Ok(OrbitStats {
            canonical,
            stabilizer_size: stabilizer,
            orbit_size,
        })
    }

    /// Distinct images of `k` under the group, starting from the canonical one.
    pub fn orbit(&self, k: &MultiIndex) -> Result<Orbit<'_>> {
        let canonical = self.canonicalize(k)?;
        let values = self
            .groups
            .iter()
            .map(|g| g.iter().map(|&c| canonical[c]).collect())
            .collect();
        Ok(Orbit {
            pattern: self,
            current: canonical.into_vec(),
            values,
            done: false,
        })
    }

    /// Canonical binary multi-indices in lexicographic order, streamed.
    pub fn nabla(&self) -> Nabla<'_> {
        Nabla {
            pattern: self,
            current: Some(vec![0; self.dim]),
        }
    }

    /// Every element of the group as a coordinate map `m ↦ perm[m]`, acting by
    /// `σ(k)_m = k_{perm[m]}`. Refuses groups larger than `cap`.
    pub fn permutations(&self, cap: u64) -> Result<Permutations<'_>> {
        let order = self.group_order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "group enumeration",
                requested: order.to_string(),
                cap,
            });
        }
        Ok(Permutations {
            pattern: self,
            slots: self.groups.to_vec(),
            done: false,
        })
    }
}

/// `σ(k)` for a map produced by [`InvariancePattern::permutations`].
pub fn permute(perm: &[usize], k: &MultiIndex) -> MultiIndex {
    MultiIndex::from_vec_unchecked(perm.iter().map(|&p| k[p]).collect())
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn parse_coordinate_list(spec: &str) -> Result<Vec<usize>> {
    let bad = |s: &str| Error::InvalidPattern(format!("cannot parse coordinate list '{s}'"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad(part))?;
                let b: usize = b.trim().parse().map_err(|_| bad(part))?;
                if a > b {
                    return Err(bad(part));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    Ok(out)
}

/// Orbit of a multi-index together with its stabilizer order `M(k)!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStats {
    pub canonical: MultiIndex,
    pub stabilizer_size: BigUint,
    pub orbit_size: BigUint,
}

impl OrbitStats {
    /// Orbit size as a machine integer. Panics past `u64`, which needs `d > 60`.
    pub fn orbit_len(&self) -> u64 {
        self.orbit_size.to_u64().expect("orbit size fits in u64")
    }
}

/// Lexicographic stream over the canonical binary multi-indices `∇`.
pub struct Nabla<'a> {
    pattern: &'a InvariancePattern,
    current: Option<Vec<i64>>,
}

impl Iterator for Nabla<'_> {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let v = self.current.take()?;
        let out = MultiIndex::from_vec_unchecked(v.clone());
        // successor: raise the rightmost zero, then refill the suffix with
        // the smallest entries keeping each group non-decreasing
        if let Some(i) = v.iter().rposition(|&e| e == 0) {
            let mut next = v;
            next[i] = 1;
            let mut has_one = vec![false; self.pattern.groups.len()];
            for m in 0..=i {
                if let (Some(g), 1) = (self.pattern.group_of[m], next[m]) {
                    has_one[g] = true;
                }
            }
            for m in i + 1..next.len() {
                next[m] = match self.pattern.group_of[m] {
                    Some(g) if has_one[g] => 1,
                    _ => 0,
                };
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Distinct orbit elements: multiset permutations per group, last group fastest.
pub struct Orbit<'a> {
    pattern: &'a InvariancePattern,
    current: Vec<i64>,
    values: Vec<Vec<i64>>,
    done: bool,
}

impl Iterator for Orbit<'_> {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        if self.done {
            return None;
        }
        let out = MultiIndex::from_vec_unchecked(self.current.clone());
        self.done = true;
        for gi in (0..self.values.len()).rev() {
            let advanced = next_permutation(&mut self.values[gi]);
            for (&c, &v) in self.pattern.groups[gi].iter().zip(&self.values[gi]) {
                self.current[c] = v;
            }
            if advanced {
                self.done = false;
                break;
            }
            // wrapped around to sorted order; carry into the previous group
        }
        Some(out)
    }
}

/// Full group enumeration; only for brute-force checks.
pub struct Permutations<'a> {
    pattern: &'a InvariancePattern,
    slots: Vec<Vec<usize>>,
    done: bool,
}

impl Iterator for Permutations<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let mut perm: Vec<usize> = (0..self.pattern.dim).collect();
        for (g, slot) in self.pattern.groups.iter().zip(&self.slots) {
            for (&c, &s) in g.iter().zip(slot) {
                perm[c] = s;
            }
        }
        self.done = true;
        for gi in (0..self.slots.len()).rev() {
            if next_permutation(&mut self.slots[gi]) {
                self.done = false;
                break;
            }
        }
        Some(perm)
    }
}

/// Rearranges into the next lexicographic permutation; on the last one
/// resets to sorted order and returns `false`.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.reverse();
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// `∇` collected into memory, refusing more than `cap` entries.
pub fn enumerate_nabla(p: &InvariancePattern, cap: u64) -> Result<Vec<MultiIndex>> {
    let count = p.n_star();
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "canonical index set",
            requested: count.to_string(),
            cap,
        });
    }
    Ok(p.nabla().collect())
}

/// Orbit averaging: the coefficient at `k` becomes the mean of the
/// coefficients over the orbit of `k`.
pub fn symmetrize<T: Real>(f: &FourierPolynomial<T>, p: &InvariancePattern) -> Result<FourierPolynomial<T>> {
    p.check_dim(f.dim())?;
    let mut classes: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
    for (k, c) in f.terms() {
        *classes.entry(p.canonicalize(k)?).or_default() += *c;
    }
    let mut out = FourierPolynomial::zero(f.dim())?;
    for (canonical, total) in classes {
        let size = p.orbit_stats(&canonical)?.orbit_size;
        let mean = total / T::of(size.to_f64().unwrap_or(f64::INFINITY));
        for h in p.orbit(&canonical)? {
            out.insert(h, mean)?;
        }
    }
    Ok(out)
}

/// Whether the coefficients are constant on every orbit, to within `tol`.
/// Orbit members absent from the support count as zero.
pub fn is_invariant<T: Real>(f: &FourierPolynomial<T>, p: &InvariancePattern, tol: T) -> bool {
    if f.dim() != p.dim() {
        return false;
    }
    let mut present: BTreeMap<MultiIndex, usize> = BTreeMap::new();
    for (k, c) in f.terms() {
        let canonical = p.canonicalize(k).expect("dimension checked");
        if (*c - f.coefficient(&canonical)).norm() > tol {
            return false;
        }
        *present.entry(canonical).or_default() += 1;
    }
    present.into_iter().all(|(canonical, count)| {
        let full = p.orbit_stats(&canonical).expect("dimension checked").orbit_size;
        BigUint::from(count) == full || f.coefficient(&canonical).norm() <= tol
    })
}

#[derive(Serialize, Deserialize)]
#[doc(hidden)]
pub struct PatternWire {
    dim: usize,
    groups: Vec<Vec<usize>>,
}

impl TryFrom<PatternWire> for InvariancePattern {
    type Error = Error;

    fn try_from(w: PatternWire) -> Result<Self> {
        Self::new(w.dim, w.groups)
    }
}

impl From<InvariancePattern> for PatternWire {
    fn from(p: InvariancePattern) -> Self {
        PatternWire {
            dim: p.dim,
            groups: p.groups_one_based(),
        }
    }
}

impl fmt::Debug for InvariancePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvariancePattern(d={}, {self})", self.dim)
    }
}

impl fmt::Display for InvariancePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "none");
        }
        let parts: Vec<String> = self
            .groups_one_based()
            .iter()
            .map(|g| g.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

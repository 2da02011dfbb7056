//! The odometer space of type (n_k), modeled through its clopen algebra.
//!
//! Points of the inverse-limit space are never materialized: every
//! construction in sight is locally constant, so a finite chain of levels
//! together with label subsets of Z_{n_k} carries all the information.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The divisibility chain (n_1, .., n_K) defining an odometer.
///
/// Levels are strictly increasing with n_k | n_{k+1}; a leading run of 1s is
/// dropped on construction so that n_1 >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OdometerType {
    levels: Vec<u64>,
}

impl OdometerType {
    pub fn new(levels: Vec<u64>) -> Result<Self> {
        let levels: Vec<u64> = levels.into_iter().skip_while(|&n| n == 1).collect();
        if levels.is_empty() {
            return Err(Error::InvalidOdometerType(
                "chain must contain a level n_k >= 2".into(),
            ));
        }
        for w in levels.windows(2) {
            if w[1] <= w[0] || w[1] % w[0] != 0 {
                return Err(Error::InvalidOdometerType(format!(
                    "levels must strictly increase and divide: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if levels[0] < 2 {
            return Err(Error::InvalidOdometerType("n_1 must be >= 2".into()));
        }
        Ok(OdometerType { levels })
    }

    /// Number of levels K.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// n_k for a 1-based level index.
    pub fn n(&self, level: usize) -> Result<u64> {
        if level == 0 || level > self.levels.len() {
            return Err(Error::LevelOutOfRange {
                level,
                max: self.levels.len(),
            });
        }
        Ok(self.levels[level - 1])
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    /// The whole space X as a clopen set.
    pub fn full_set(&self) -> ClopenSet {
        ClopenSet {
            level: 1,
            labels: (0..self.levels[0]).collect(),
        }
    }

    pub fn empty_set(&self) -> ClopenSet {
        ClopenSet {
            level: 1,
            labels: BTreeSet::new(),
        }
    }
}

impl<'de> Deserialize<'de> for OdometerType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            levels: Vec<u64>,
        }
        let r = Repr::deserialize(d)?;
        OdometerType::new(r.levels).map_err(serde::de::Error::custom)
    }
}

/// A clopen subset of X: a level k and a label subset of Z_{n_k}.
///
/// Kept in canonical form: the minimal level at which the label set is
/// expressible, so structural equality coincides with set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClopenSet {
    level: usize,
    labels: BTreeSet<u64>,
}

impl ClopenSet {
    /// The cylinder U(k, l) of points with level-k coordinate l.
    pub fn cylinder(space: &OdometerType, level: usize, label: u64) -> Result<Self> {
        let n = space.n(level)?;
        if label >= n {
            return Err(Error::LabelOutOfRange { label, level, n });
        }
        Ok(ClopenSet {
            level,
            labels: [label].into_iter().collect(),
        }
        .canonicalize(space))
    }

    /// Build from an explicit label set at a level, canonicalizing.
    pub fn from_labels(
        space: &OdometerType,
        level: usize,
        labels: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let n = space.n(level)?;
        let labels: BTreeSet<u64> = labels.into_iter().collect();
        if let Some(&l) = labels.iter().find(|&&l| l >= n) {
            return Err(Error::LabelOutOfRange { label: l, level, n });
        }
        Ok(ClopenSet { level, labels }.canonicalize(space))
    }

    fn canonicalize(mut self, space: &OdometerType) -> Self {
        while self.level > 1 {
            let n = space.n(self.level).unwrap();
            let n_prev = space.n(self.level - 1).unwrap();
            let q = n / n_prev;
            // expressible one level lower iff labels is a union of mod-n_prev fibers
            let mut lower = BTreeSet::new();
            let mut ok = true;
            'outer: for r in 0..n_prev {
                let mut hits = 0u64;
                for t in 0..q {
                    if self.labels.contains(&(r + t * n_prev)) {
                        hits += 1;
                    }
                }
                if hits == q {
                    lower.insert(r);
                } else if hits != 0 {
                    ok = false;
                    break 'outer;
                }
            }
            if !ok {
                break;
            }
            self.level -= 1;
            self.labels = lower;
        }
        self
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn labels(&self) -> &BTreeSet<u64> {
        &self.labels
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_full(&self, space: &OdometerType) -> bool {
        self.level == 1 && self.labels.len() as u64 == space.levels[0]
    }

    /// Re-express at a deeper level k' >= level. Same set of points.
    pub fn refine(&self, space: &OdometerType, level: usize) -> Result<ClopenSet> {
        if level < self.level {
            return Err(Error::RefineDownward {
                from: self.level,
                to: level,
            });
        }
        let n_new = space.n(level)?;
        let n_old = space.n(self.level)?;
        let labels = (0..n_new)
            .filter(|l| self.labels.contains(&(l % n_old)))
            .collect();
        Ok(ClopenSet { level, labels })
    }

    /// Raw labels at a given (deeper or equal) level, without canonical drop.
    pub fn labels_at(&self, space: &OdometerType, level: usize) -> Result<BTreeSet<u64>> {
        Ok(self.refine(space, level)?.labels)
    }

    pub fn union(&self, space: &OdometerType, other: &ClopenSet) -> Result<ClopenSet> {
        self.boolean(space, other, |a, b| a.union(b).cloned().collect())
    }

    pub fn intersect(&self, space: &OdometerType, other: &ClopenSet) -> Result<ClopenSet> {
        self.boolean(space, other, |a, b| a.intersection(b).cloned().collect())
    }

    pub fn difference(&self, space: &OdometerType, other: &ClopenSet) -> Result<ClopenSet> {
        self.boolean(space, other, |a, b| a.difference(b).cloned().collect())
    }

    fn boolean(
        &self,
        space: &OdometerType,
        other: &ClopenSet,
        op: impl Fn(&BTreeSet<u64>, &BTreeSet<u64>) -> BTreeSet<u64>,
    ) -> Result<ClopenSet> {
        let level = self.level.max(other.level);
        let a = self.refine(space, level)?;
        let b = other.refine(space, level)?;
        Ok(ClopenSet {
            level,
            labels: op(&a.labels, &b.labels),
        }
        .canonicalize(space))
    }

    pub fn complement(&self, space: &OdometerType) -> Result<ClopenSet> {
        let n = space.n(self.level)?;
        Ok(ClopenSet {
            level: self.level,
            labels: (0..n).filter(|l| !self.labels.contains(l)).collect(),
        }
        .canonicalize(space))
    }

    pub fn is_disjoint_from(&self, space: &OdometerType, other: &ClopenSet) -> Result<bool> {
        Ok(self.intersect(space, other)?.is_empty())
    }

    /// T^m(A): shift every label by m modulo n_k.
    pub fn translate(&self, space: &OdometerType, m: i64) -> ClopenSet {
        let n = space.n(self.level).expect("canonical level is valid") as i64;
        let labels = self
            .labels
            .iter()
            .map(|&l| (l as i64 + m).rem_euclid(n) as u64)
            .collect();
        // translation maps fibers to fibers, so canonicality is preserved
        ClopenSet {
            level: self.level,
            labels,
        }
    }

    /// mu(A) = |labels| / n_k under the unique invariant measure.
    pub fn measure(&self, space: &OdometerType) -> BigRational {
        let n = space.n(self.level).expect("canonical level is valid");
        BigRational::new(
            BigInt::from(self.labels.len() as u64),
            BigInt::from(n),
        )
    }

    /// Whether A, T(A), .., T^(n-1)(A) are pairwise disjoint.
    pub fn is_n_disjoint(&self, space: &OdometerType, n: usize) -> bool {
        if self.is_empty() {
            return true;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let a = self.translate(space, i as i64);
                let b = self.translate(space, j as i64);
                if !a.is_disjoint_from(space, &b).expect("same space") {
                    return false;
                }
            }
        }
        true
    }

    /// First-return times of T to A, per label of A at its canonical level.
    ///
    /// t(l) = min { m >= 1 : (l+m) mod n_k lies in labels(A) }; constant on
    /// each cylinder.
    pub fn first_return(&self, space: &OdometerType) -> Result<BTreeMap<u64, u64>> {
        if self.is_empty() {
            return Err(Error::EmptyReturn);
        }
        let n = space.n(self.level)?;
        let mut out = BTreeMap::new();
        for &l in &self.labels {
            let t = (1..=n)
                .find(|m| self.labels.contains(&((l + m) % n)))
                .expect("nonempty set returns within one full cycle");
            out.insert(l, t);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space24() -> OdometerType {
        OdometerType::new(vec![2, 4]).unwrap()
    }

    #[test]
    fn cylinder_basics() {
        let sp = space24();
        let a = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        assert_eq!(a.level(), 1);
        assert_eq!(a.labels().iter().copied().collect::<Vec<_>>(), vec![0]);
        let b = ClopenSet::cylinder(&sp, 2, 3).unwrap();
        assert_eq!(b.labels().iter().copied().collect::<Vec<_>>(), vec![3]);
        assert!(matches!(
            ClopenSet::cylinder(&sp, 2, 4),
            Err(Error::LabelOutOfRange { .. })
        ));
        assert!(ClopenSet::cylinder(&sp, 3, 0).is_err());
    }

    #[test]
    fn refine_examples() {
        let sp = space24();
        let a = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let r = a.refine(&sp, 2).unwrap();
        assert_eq!(r.labels().iter().copied().collect::<Vec<_>>(), vec![0, 2]);
        let full = sp.full_set().refine(&sp, 2).unwrap();
        assert_eq!(full.labels().len(), 4);
        let u21 = ClopenSet::cylinder(&sp, 2, 1).unwrap();
        assert_eq!(u21.refine(&sp, 2).unwrap().labels(), u21.labels());
        assert!(u21.refine(&sp, 1).is_err());
    }

    #[test]
    fn canonicalization_drops_levels() {
        let sp = space24();
        // {0,2} at level 2 is U(1,0)
        let a = ClopenSet::from_labels(&sp, 2, [0, 2]).unwrap();
        assert_eq!(a.level(), 1);
        assert_eq!(a, ClopenSet::cylinder(&sp, 1, 0).unwrap());
        // empty and full sets canonicalize to level 1
        let e = ClopenSet::from_labels(&sp, 2, []).unwrap();
        assert_eq!(e.level(), 1);
        assert!(e.is_empty());
        let f = ClopenSet::from_labels(&sp, 2, [0, 1, 2, 3]).unwrap();
        assert!(f.is_full(&sp));
    }

    #[test]
    fn boolean_examples() {
        let sp = space24();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let u11 = ClopenSet::cylinder(&sp, 1, 1).unwrap();
        assert!(u10.union(&sp, &u11).unwrap().is_full(&sp));
        let u21 = ClopenSet::cylinder(&sp, 2, 1).unwrap();
        assert!(u10.intersect(&sp, &u21).unwrap().is_empty());
        let c = ClopenSet::cylinder(&sp, 2, 0).unwrap().complement(&sp).unwrap();
        assert_eq!(c.labels().iter().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn translate_examples() {
        let sp = space24();
        let u21 = ClopenSet::cylinder(&sp, 2, 1).unwrap();
        assert_eq!(
            u21.translate(&sp, 1),
            ClopenSet::cylinder(&sp, 2, 2).unwrap()
        );
        let u23 = ClopenSet::cylinder(&sp, 2, 3).unwrap();
        assert_eq!(
            u23.translate(&sp, 1),
            ClopenSet::cylinder(&sp, 2, 0).unwrap()
        );
        assert_eq!(u21.translate(&sp, 4), u21);
    }

    #[test]
    fn measure_examples() {
        let sp = space24();
        let u23 = ClopenSet::cylinder(&sp, 2, 3).unwrap();
        assert_eq!(u23.measure(&sp), BigRational::new(1.into(), 4.into()));
        assert_eq!(sp.full_set().measure(&sp), BigRational::from_integer(1.into()));
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let u21 = ClopenSet::cylinder(&sp, 2, 1).unwrap();
        let u = u10.union(&sp, &u21).unwrap();
        assert_eq!(u.measure(&sp), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn n_disjoint_examples() {
        let sp = space24();
        let u20 = ClopenSet::cylinder(&sp, 2, 0).unwrap();
        assert!(u20.is_n_disjoint(&sp, 4));
        assert!(!u20.is_n_disjoint(&sp, 5));
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        assert!(u10.is_n_disjoint(&sp, 2));
        // monotone
        assert!(u20.is_n_disjoint(&sp, 3));
    }

    #[test]
    fn first_return_examples() {
        let sp = space24();
        let u21 = ClopenSet::cylinder(&sp, 2, 1).unwrap();
        assert_eq!(u21.first_return(&sp).unwrap(), [(1u64, 4u64)].into());
        let a = ClopenSet::from_labels(&sp, 2, [1, 3]).unwrap();
        assert_eq!(a.first_return(&sp).unwrap(), [(1, 2), (3, 2)].into());
        let b = ClopenSet::from_labels(&sp, 2, [0, 1]).unwrap();
        assert_eq!(b.first_return(&sp).unwrap(), [(0, 1), (1, 3)].into());
        assert!(matches!(
            sp.empty_set().first_return(&sp),
            Err(Error::EmptyReturn)
        ));
    }

    #[test]
    fn kac_identity() {
        let sp = OdometerType::new(vec![2, 4, 8]).unwrap();
        for labels in [vec![0u64], vec![1, 3], vec![0, 1, 5], vec![2, 3, 6, 7]] {
            let a = ClopenSet::from_labels(&sp, 3, labels).unwrap();
            let a = a.refine(&sp, 3).unwrap();
            let total: u64 = a.first_return(&sp).unwrap().values().sum();
            assert_eq!(total, 8);
        }
    }

    #[test]
    fn degenerate_chain_prefix() {
        let sp = OdometerType::new(vec![1, 1, 3, 6]).unwrap();
        assert_eq!(sp.levels(), &[3, 6]);
        assert!(OdometerType::new(vec![1, 1]).is_err());
        assert!(OdometerType::new(vec![2, 3]).is_err());
        assert!(OdometerType::new(vec![4, 4]).is_err());
    }
}

//! Elements of the topological full group [[T]] as integer cocycles.
//!
//! A homeomorphism locally equal to powers of T is recorded by the power it
//! applies on each level-k cylinder. Cocycle values are genuine integers,
//! not residues: the winding number of the matrix model depends on them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::odometer::{ClopenSet, OdometerType};
use crate::perm::Perm;

/// An element of [[T]]: level k plus the map c: Z_{n_k} -> Z.
///
/// Invariant: l -> (l + c(l)) mod n_k is a permutation of the labels, and
/// the stored level is minimal (the cocycle is not constant on the fibers
/// of reduction to the previous level).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FullGroupElement {
    level: usize,
    cocycle: Vec<i64>,
}

impl FullGroupElement {
    /// Validate and canonicalize a cocycle given on all of Z_{n_k}.
    pub fn from_cocycle(space: &OdometerType, level: usize, cocycle: Vec<i64>) -> Result<Self> {
        let n = space.n(level)?;
        if cocycle.len() as u64 != n {
            return Err(Error::Malformed(format!(
                "cocycle length {} does not match n_{} = {}",
                cocycle.len(),
                level,
                n
            )));
        }
        let elem = FullGroupElement { level, cocycle };
        if !elem.label_map_is_bijective() {
            return Err(Error::NotHomeomorphism);
        }
        let sum: i64 = elem.cocycle.iter().sum();
        assert_eq!(sum.rem_euclid(n as i64), 0, "cocycle sum must vanish mod n_k");
        Ok(elem.canonicalize(space))
    }

    pub fn identity() -> Self {
        // constant cocycle 0 canonicalizes to level 1 over any space
        FullGroupElement {
            level: 1,
            cocycle: vec![0, 0],
        }
    }

    /// T^m: the constant cocycle m at level 1.
    pub fn power_of_t(space: &OdometerType, m: i64) -> Self {
        let n = space.n(1).expect("level 1 always exists");
        FullGroupElement {
            level: 1,
            cocycle: vec![m; n as usize],
        }
        .canonicalize(space)
    }

    fn label_map_is_bijective(&self) -> bool {
        let n = self.cocycle.len() as i64;
        let mut seen = vec![false; n as usize];
        for (l, &c) in self.cocycle.iter().enumerate() {
            let target = (l as i64 + c).rem_euclid(n) as usize;
            if seen[target] {
                return false;
            }
            seen[target] = true;
        }
        true
    }

    fn canonicalize(mut self, space: &OdometerType) -> Self {
        while self.level > 1 {
            let n_prev = space.n(self.level - 1).unwrap() as usize;
            let constant_on_fibers = (0..self.cocycle.len())
                .all(|l| self.cocycle[l] == self.cocycle[l % n_prev]);
            if !constant_on_fibers {
                break;
            }
            self.level -= 1;
            self.cocycle.truncate(n_prev);
        }
        // identity normalizes to a fixed representative
        if self.level == 1 && self.cocycle.iter().all(|&c| c == 0) {
            return FullGroupElement::identity();
        }
        self
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn cocycle(&self) -> &[i64] {
        &self.cocycle
    }

    pub fn is_identity(&self) -> bool {
        self.cocycle.iter().all(|&c| c == 0)
    }

    /// Cocycle re-expressed at level k, if representable there.
    pub fn cocycle_at(&self, space: &OdometerType, level: usize) -> Result<Vec<i64>> {
        if level < self.level {
            return Err(Error::NotRepresentable { level });
        }
        let n = space.n(level)? as usize;
        let n_own = self.cocycle.len();
        Ok((0..n).map(|l| self.cocycle[l % n_own]).collect())
    }

    /// The induced permutation of Z_{n_k}.
    pub fn label_perm_at(&self, space: &OdometerType, level: usize) -> Result<Perm> {
        let c = self.cocycle_at(space, level)?;
        let n = c.len() as i64;
        Perm::new(
            c.iter()
                .enumerate()
                .map(|(l, &v)| (l as i64 + v).rem_euclid(n) as usize)
                .collect(),
        )
    }

    /// Group law: (g.compose(h))(x) = g(h(x)).
    pub fn compose(&self, space: &OdometerType, other: &FullGroupElement) -> FullGroupElement {
        let level = self.level.max(other.level);
        let cg = self.cocycle_at(space, level).expect("level >= own level");
        let ch = other.cocycle_at(space, level).expect("level >= own level");
        let n = cg.len() as i64;
        let cocycle = (0..cg.len())
            .map(|l| {
                let mid = (l as i64 + ch[l]).rem_euclid(n) as usize;
                ch[l] + cg[mid]
            })
            .collect();
        FullGroupElement { level, cocycle }.canonicalize(space)
    }

    pub fn inverse(&self, space: &OdometerType) -> FullGroupElement {
        let n = self.cocycle.len() as i64;
        let mut cocycle = vec![0i64; self.cocycle.len()];
        for (l, &c) in self.cocycle.iter().enumerate() {
            let target = (l as i64 + c).rem_euclid(n) as usize;
            cocycle[target] = -c;
        }
        FullGroupElement {
            level: self.level,
            cocycle,
        }
        .canonicalize(space)
    }

    pub fn pow(&self, space: &OdometerType, e: i64) -> FullGroupElement {
        let base = if e < 0 { self.inverse(space) } else { self.clone() };
        let mut acc = FullGroupElement::identity();
        for _ in 0..e.unsigned_abs() {
            acc = base.compose(space, &acc);
        }
        acc
    }

    /// Image g(A) as a clopen set.
    pub fn act(&self, space: &OdometerType, set: &ClopenSet) -> ClopenSet {
        let level = self.level.max(set.level());
        let c = self.cocycle_at(space, level).expect("level >= own level");
        let n = c.len() as i64;
        let labels = set
            .labels_at(space, level)
            .expect("level >= set level")
            .into_iter()
            .map(|l| (l as i64 + c[l as usize]).rem_euclid(n) as u64);
        ClopenSet::from_labels(space, level, labels).expect("labels in range")
    }

    /// The index homomorphism I(g) = (1/n_k) * sum of cocycle values.
    pub fn index(&self) -> i64 {
        let n = self.cocycle.len() as i64;
        let sum: i64 = self.cocycle.iter().sum();
        debug_assert_eq!(sum % n, 0);
        sum / n
    }
}

impl<'de> Deserialize<'de> for FullGroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            level: usize,
            cocycle: Vec<i64>,
        }
        let r = Repr::deserialize(d)?;
        let elem = FullGroupElement {
            level: r.level,
            cocycle: r.cocycle,
        };
        if elem.cocycle.is_empty() || !elem.label_map_is_bijective() {
            return Err(serde::de::Error::custom("cocycle is not a homeomorphism"));
        }
        Ok(elem)
    }
}

impl FullGroupElement {
    /// Re-validate and canonicalize against a space, after deserialization.
    pub fn revalidate(self, space: &OdometerType) -> Result<FullGroupElement> {
        FullGroupElement::from_cocycle(space, self.level, self.cocycle)
    }
}

/// The tower permutation sigma_A for an n-disjoint clopen set A.
///
/// Applies T^(sigma(i)-i) on T^i(A) and fixes the rest of the space.
pub fn sigma_element(
    space: &OdometerType,
    set: &ClopenSet,
    sigma: &Perm,
) -> Result<FullGroupElement> {
    let n = sigma.len();
    if !set.is_n_disjoint(space, n) {
        return Err(Error::NotNDisjoint { n });
    }
    let level = set.level();
    let nk = space.n(level)? as usize;
    let mut cocycle = vec![0i64; nk];
    for i in 0..n {
        let tower = set.translate(space, i as i64);
        for &l in tower.labels_at(space, level)?.iter() {
            cocycle[l as usize] = sigma.apply(i) as i64 - i as i64;
        }
    }
    FullGroupElement::from_cocycle(space, level, cocycle)
}

/// The first-return element T_A: T^(t_A(x)) on A, identity elsewhere.
pub fn return_element(space: &OdometerType, set: &ClopenSet) -> FullGroupElement {
    if set.is_empty() {
        return FullGroupElement::identity();
    }
    let level = set.level();
    let nk = space.n(level).expect("canonical level valid") as usize;
    let mut cocycle = vec![0i64; nk];
    for (l, t) in set.first_return(space).expect("nonempty") {
        cocycle[l as usize] = t as i64;
    }
    FullGroupElement::from_cocycle(space, level, cocycle).expect("first return is bijective")
}

/// Level-k normal form: g = (prod_l T_{U(k,l)}^{m_l}) * sigma_{U(k,0)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub level: usize,
    pub tower_powers: Vec<i64>,
    pub sigma: Perm,
}

impl NormalForm {
    /// Recompose by actually multiplying the generators.
    pub fn recompose(&self, space: &OdometerType) -> Result<FullGroupElement> {
        let n = self.tower_powers.len();
        let base = ClopenSet::cylinder(space, self.level, 0)?;
        let mut acc = sigma_element(space, &base, &self.sigma)?;
        for l in 0..n {
            let cyl = ClopenSet::cylinder(space, self.level, l as u64)?;
            let t_cyl = return_element(space, &cyl);
            acc = t_cyl.pow(space, self.tower_powers[l]).compose(space, &acc);
        }
        Ok(acc)
    }
}

/// Decompose g at level k into tower powers and a tower permutation.
pub fn normal_form(
    space: &OdometerType,
    g: &FullGroupElement,
    level: usize,
) -> Result<NormalForm> {
    let c = g.cocycle_at(space, level)?;
    let n = c.len() as i64;
    let sigma = g.label_perm_at(space, level)?;
    let mut tower_powers = vec![0i64; c.len()];
    for (l, &cl) in c.iter().enumerate() {
        let shift = sigma.apply(l) as i64 - l as i64;
        debug_assert_eq!((cl - shift).rem_euclid(n), 0);
        tower_powers[sigma.apply(l)] = (cl - shift) / n;
    }
    Ok(NormalForm {
        level,
        tower_powers,
        sigma,
    })
}

/// Level-wise membership test for the commutator subgroup.
///
/// True iff the cocycle sums to zero and the induced label permutation is
/// even, i.e. g lies in the derived subgroup of the level-k wreath-type
/// group Z^{n_k} x| S_{n_k}. A true answer at any level certifies
/// membership in [[T]]'; false at one level decides nothing on its own.
pub fn in_derived_at_level(
    space: &OdometerType,
    g: &FullGroupElement,
    level: usize,
) -> Result<bool> {
    let c = g.cocycle_at(space, level)?;
    let sum: i64 = c.iter().sum();
    Ok(sum == 0 && g.label_perm_at(space, level)?.is_even())
}

/// Semi-decision: membership certified at some level <= max_level.
pub fn in_derived_up_to(
    space: &OdometerType,
    g: &FullGroupElement,
    max_level: usize,
) -> Result<bool> {
    for k in g.level()..=max_level.min(space.depth()) {
        if in_derived_at_level(space, g, k)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Standard generating set of the level-k group: the tower returns
/// T_{U(k,l)} and tower permutations for a transposition and a full cycle.
pub fn level_generators(space: &OdometerType, level: usize) -> Result<Vec<FullGroupElement>> {
    let n = space.n(level)? as usize;
    let mut gens = Vec::new();
    for l in 0..n {
        let cyl = ClopenSet::cylinder(space, level, l as u64)?;
        gens.push(return_element(space, &cyl));
    }
    let base = ClopenSet::cylinder(space, level, 0)?;
    if n >= 2 {
        gens.push(sigma_element(space, &base, &Perm::transposition(n, 0, 1)?)?);
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(sigma_element(space, &base, &Perm::from_cycles(n, &[&cycle])?)?);
    }
    Ok(gens)
}

/// Bounded word oracle for derived-subgroup membership.
///
/// Breadth-first products of commutators of the level generators, pruned to
/// cocycles with |c(l)| <= coc_bound, up to the given word length. Every
/// element returned lies in the derived subgroup by construction.
pub fn derived_oracle_ball(
    space: &OdometerType,
    level: usize,
    max_word_len: usize,
    coc_bound: i64,
) -> Result<BTreeSet<FullGroupElement>> {
    let gens = level_generators(space, level)?;
    let mut alphabet: Vec<FullGroupElement> = gens.clone();
    alphabet.extend(gens.iter().map(|g| g.inverse(space)));

    let within = |e: &FullGroupElement| -> bool {
        e.cocycle_at(space, level)
            .map(|c| c.iter().all(|&v| v.abs() <= coc_bound))
            .unwrap_or(false)
    };

    let mut commutators = BTreeSet::new();
    for a in &alphabet {
        for b in &alphabet {
            let comm = a
                .compose(space, b)
                .compose(space, &a.inverse(space))
                .compose(space, &b.inverse(space));
            if within(&comm) {
                commutators.insert(comm);
            }
        }
    }

    let mut reached: BTreeSet<FullGroupElement> = [FullGroupElement::identity()].into();
    let mut frontier: Vec<FullGroupElement> = vec![FullGroupElement::identity()];
    for _ in 0..max_word_len {
        let mut next = Vec::new();
        for w in &frontier {
            for c in &commutators {
                let e = c.compose(space, w);
                if within(&e) && reached.insert(e.clone()) {
                    next.push(e);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(reached)
}

/// Uniformly random level-k element: random tower permutation plus bounded
/// winding on each cylinder.
pub fn random_element(
    space: &OdometerType,
    level: usize,
    winding_bound: i64,
    rng: &mut impl rand::Rng,
) -> FullGroupElement {
    let n = space.n(level).expect("valid level") as usize;
    // random permutation by Fisher-Yates
    let mut map: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        map.swap(i, j);
    }
    let cocycle = (0..n)
        .map(|l| {
            let w = rng.gen_range(-winding_bound..=winding_bound);
            (map[l] as i64 - l as i64) + n as i64 * w
        })
        .collect();
    FullGroupElement::from_cocycle(space, level, cocycle).expect("construction is bijective")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space24() -> OdometerType {
        OdometerType::new(vec![2, 4]).unwrap()
    }

    #[test]
    fn from_cocycle_examples() {
        let sp = space24();
        let t = FullGroupElement::from_cocycle(&sp, 1, vec![1, 1]).unwrap();
        assert_eq!(t, FullGroupElement::power_of_t(&sp, 1));
        let s = FullGroupElement::from_cocycle(&sp, 1, vec![1, -1]).unwrap();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let sig = sigma_element(&sp, &u10, &Perm::transposition(2, 0, 1).unwrap()).unwrap();
        assert_eq!(s, sig);
        assert_eq!(
            FullGroupElement::from_cocycle(&sp, 1, vec![1, 0]),
            Err(Error::NotHomeomorphism)
        );
    }

    #[test]
    fn power_of_t() {
        let sp = space24();
        assert!(FullGroupElement::power_of_t(&sp, 0).is_identity());
        assert_eq!(
            FullGroupElement::power_of_t(&sp, 1).cocycle(),
            &[1, 1]
        );
        let m3 = FullGroupElement::power_of_t(&sp, -3);
        assert!(m3.label_perm_at(&sp, 1).is_ok());
    }

    #[test]
    fn sigma_examples() {
        let sp = space24();
        let u20 = ClopenSet::cylinder(&sp, 2, 0).unwrap();
        let id = sigma_element(&sp, &u20, &Perm::identity(4)).unwrap();
        assert!(id.is_identity());
        let cyc = sigma_element(
            &sp,
            &u20,
            &Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
        )
        .unwrap();
        assert_eq!(cyc.cocycle(), &[1, 1, 1, -3]);
        // not 5-disjoint
        assert!(sigma_element(&sp, &u20, &Perm::identity(5)).is_err());
    }

    #[test]
    fn return_examples() {
        let sp = space24();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        assert_eq!(return_element(&sp, &u10).cocycle(), &[2, 0]);
        assert!(return_element(&sp, &sp.empty_set()).is_identity());
        let a = ClopenSet::from_labels(&sp, 2, [1, 3]).unwrap();
        assert_eq!(return_element(&sp, &a).cocycle(), &[0, 2, 0, 2]);
    }

    #[test]
    fn compose_examples() {
        let sp = space24();
        let t = FullGroupElement::power_of_t(&sp, 1);
        let t_inv = FullGroupElement::power_of_t(&sp, -1);
        assert!(t.compose(&sp, &t_inv).is_identity());
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let s = sigma_element(&sp, &u10, &Perm::transposition(2, 0, 1).unwrap()).unwrap();
        assert!(s.compose(&sp, &s).is_identity());
        let ta = return_element(&sp, &u10);
        assert_eq!(ta.compose(&sp, &s), t);
    }

    #[test]
    fn act_examples() {
        let sp = space24();
        let t = FullGroupElement::power_of_t(&sp, 1);
        let u21 = ClopenSet::cylinder(&sp, 2, 1).unwrap();
        assert_eq!(t.act(&sp, &u21), ClopenSet::cylinder(&sp, 2, 2).unwrap());
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let s = sigma_element(&sp, &u10, &Perm::transposition(2, 0, 1).unwrap()).unwrap();
        assert_eq!(s.act(&sp, &u10), u10.translate(&sp, 1));
        assert_eq!(FullGroupElement::identity().act(&sp, &u21), u21);
    }

    #[test]
    fn index_examples() {
        let sp = space24();
        for m in -3..=3 {
            assert_eq!(FullGroupElement::power_of_t(&sp, m).index(), m);
        }
        let u20 = ClopenSet::cylinder(&sp, 2, 0).unwrap();
        let s = sigma_element(&sp, &u20, &Perm::from_cycles(4, &[&[0, 2, 1]]).unwrap()).unwrap();
        assert_eq!(s.index(), 0);
        let a = ClopenSet::from_labels(&sp, 2, [0, 3]).unwrap();
        assert_eq!(return_element(&sp, &a).index(), 1);
    }

    #[test]
    fn normal_form_examples() {
        let sp = space24();
        let t = FullGroupElement::power_of_t(&sp, 1);
        let nf = normal_form(&sp, &t, 1).unwrap();
        assert_eq!(nf.tower_powers, vec![1, 0]);
        assert_eq!(nf.sigma, Perm::transposition(2, 0, 1).unwrap());
        assert_eq!(nf.recompose(&sp).unwrap(), t);

        let nf_id = normal_form(&sp, &FullGroupElement::identity(), 1).unwrap();
        assert_eq!(nf_id.tower_powers, vec![0, 0]);
        assert!(nf_id.sigma.is_identity());

        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let ta = return_element(&sp, &u10);
        let nf_ta = normal_form(&sp, &ta, 1).unwrap();
        assert_eq!(nf_ta.tower_powers, vec![1, 0]);
        assert!(nf_ta.sigma.is_identity());
    }

    #[test]
    fn normal_form_rejects_deeper_elements() {
        let sp = space24();
        let g = FullGroupElement::from_cocycle(&sp, 2, vec![1, -1, 1, -1]).unwrap();
        assert_eq!(g.level(), 2);
        assert!(normal_form(&sp, &g, 1).is_err());
    }

    #[test]
    fn derived_membership_examples() {
        let sp = space24();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let s = sigma_element(&sp, &u10, &Perm::transposition(2, 0, 1).unwrap()).unwrap();
        assert!(!in_derived_at_level(&sp, &s, 1).unwrap());
        // lifts to (01)(23) at level 2, which is even
        assert!(in_derived_at_level(&sp, &s, 2).unwrap());
        assert!(in_derived_up_to(&sp, &s, 2).unwrap());
        let t = FullGroupElement::power_of_t(&sp, 1);
        assert!(!in_derived_at_level(&sp, &t, 1).unwrap());
        assert!(!in_derived_at_level(&sp, &t, 2).unwrap());
    }

    #[test]
    fn serde_shape() {
        let sp = space24();
        let s = FullGroupElement::from_cocycle(&sp, 1, vec![1, -1]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"level":1,"cocycle":[1,-1]}"#);
        let back: FullGroupElement = serde_json::from_str(&j).unwrap();
        assert_eq!(back.revalidate(&sp).unwrap(), s);
        assert!(serde_json::from_str::<FullGroupElement>(r#"{"level":1,"cocycle":[1,0]}"#).is_err());
    }
}

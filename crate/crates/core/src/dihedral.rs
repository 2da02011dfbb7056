//! The topological full group of the infinite-dihedral action generated by
//! the shift T and the reflection J.
//!
//! Elements are cocycles into Z x| Z_2; the matrix model does not apply to
//! flip elements, so this module stays at the group level.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::full_group::{normal_form, FullGroupElement};
use crate::odometer::OdometerType;
use crate::perm::Perm;

/// An element (m, flip) of the infinite dihedral group Z x| Z_2, acting on
/// the odometer by x -> m + x when flip is false and x -> m - x otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralScalar {
    pub m: i64,
    pub flip: bool,
}

impl DihedralScalar {
    pub const IDENTITY: DihedralScalar = DihedralScalar { m: 0, flip: false };

    pub fn translation(m: i64) -> Self {
        DihedralScalar { m, flip: false }
    }

    pub fn reflection() -> Self {
        DihedralScalar { m: 0, flip: true }
    }

    fn sign(self) -> i64 {
        if self.flip {
            -1
        } else {
            1
        }
    }

    /// Group law: (m, e)(m', e') = (m + sgn(e) m', e e').
    pub fn mul(self, rhs: DihedralScalar) -> DihedralScalar {
        DihedralScalar {
            m: self.m + self.sign() * rhs.m,
            flip: self.flip ^ rhs.flip,
        }
    }

    pub fn inverse(self) -> DihedralScalar {
        DihedralScalar {
            m: -self.sign() * self.m,
            flip: self.flip,
        }
    }

    /// Induced map on labels modulo n.
    pub fn apply_label(self, l: u64, n: u64) -> u64 {
        (self.sign() * l as i64 + self.m).rem_euclid(n as i64) as u64
    }
}

/// An element of the dihedral full group: level k plus a cocycle into
/// Z x| Z_2 on the level-k labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DihedralElement {
    level: usize,
    cocycle: Vec<DihedralScalar>,
}

impl DihedralElement {
    pub fn from_cocycle(
        space: &OdometerType,
        level: usize,
        cocycle: Vec<DihedralScalar>,
    ) -> Result<Self> {
        let n = space.n(level)?;
        if cocycle.len() as u64 != n {
            return Err(Error::Malformed(format!(
                "cocycle length {} does not match n_{} = {}",
                cocycle.len(),
                level,
                n
            )));
        }
        let elem = DihedralElement { level, cocycle };
        if !elem.label_map_is_bijective() {
            return Err(Error::NotHomeomorphism);
        }
        Ok(elem.canonicalize(space))
    }

    pub fn identity() -> Self {
        DihedralElement {
            level: 1,
            cocycle: vec![DihedralScalar::IDENTITY; 2],
        }
    }

    fn label_map_is_bijective(&self) -> bool {
        let n = self.cocycle.len() as u64;
        let mut seen = vec![false; n as usize];
        for (l, c) in self.cocycle.iter().enumerate() {
            let t = c.apply_label(l as u64, n) as usize;
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    fn canonicalize(mut self, space: &OdometerType) -> Self {
        while self.level > 1 {
            let n_prev = space.n(self.level - 1).unwrap() as usize;
            let constant = (0..self.cocycle.len())
                .all(|l| self.cocycle[l] == self.cocycle[l % n_prev]);
            if !constant {
                break;
            }
            self.level -= 1;
            self.cocycle.truncate(n_prev);
        }
        if self.level == 1 && self.cocycle.iter().all(|c| *c == DihedralScalar::IDENTITY) {
            return DihedralElement::identity();
        }
        self
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn cocycle(&self) -> &[DihedralScalar] {
        &self.cocycle
    }

    pub fn is_identity(&self) -> bool {
        self.cocycle.iter().all(|c| *c == DihedralScalar::IDENTITY)
    }

    pub fn is_flip_free(&self) -> bool {
        self.cocycle.iter().all(|c| !c.flip)
    }

    pub fn cocycle_at(&self, space: &OdometerType, level: usize) -> Result<Vec<DihedralScalar>> {
        if level < self.level {
            return Err(Error::NotRepresentable { level });
        }
        let n = space.n(level)? as usize;
        let own = self.cocycle.len();
        Ok((0..n).map(|l| self.cocycle[l % own]).collect())
    }

    pub fn label_perm_at(&self, space: &OdometerType, level: usize) -> Result<Perm> {
        let c = self.cocycle_at(space, level)?;
        let n = c.len() as u64;
        Perm::new(
            c.iter()
                .enumerate()
                .map(|(l, s)| s.apply_label(l as u64, n) as usize)
                .collect(),
        )
    }

    /// Number of cylinders at a level whose cocycle value flips.
    pub fn flip_count_at(&self, space: &OdometerType, level: usize) -> Result<usize> {
        Ok(self
            .cocycle_at(space, level)?
            .iter()
            .filter(|c| c.flip)
            .count())
    }

    /// Group law: (g.compose(h))(x) = g(h(x)).
    pub fn compose(&self, space: &OdometerType, other: &DihedralElement) -> DihedralElement {
        let level = self.level.max(other.level);
        let cg = self.cocycle_at(space, level).expect("level >= own");
        let ch = other.cocycle_at(space, level).expect("level >= own");
        let n = cg.len() as u64;
        let cocycle = (0..cg.len())
            .map(|l| {
                let mid = ch[l].apply_label(l as u64, n) as usize;
                cg[mid].mul(ch[l])
            })
            .collect();
        DihedralElement { level, cocycle }.canonicalize(space)
    }

    pub fn inverse(&self, space: &OdometerType) -> DihedralElement {
        let n = self.cocycle.len() as u64;
        let mut cocycle = vec![DihedralScalar::IDENTITY; self.cocycle.len()];
        for (l, c) in self.cocycle.iter().enumerate() {
            let t = c.apply_label(l as u64, n) as usize;
            cocycle[t] = c.inverse();
        }
        DihedralElement {
            level: self.level,
            cocycle,
        }
        .canonicalize(space)
    }

    /// Revalidate after deserialization.
    pub fn revalidate(self, space: &OdometerType) -> Result<DihedralElement> {
        DihedralElement::from_cocycle(space, self.level, self.cocycle)
    }

    /// The flip-free part as a full-group element, if there are no flips.
    pub fn to_full_group(&self, space: &OdometerType) -> Result<FullGroupElement> {
        if !self.is_flip_free() {
            return Err(Error::Malformed(
                "element has flips and lies outside [[T]]".into(),
            ));
        }
        FullGroupElement::from_cocycle(
            space,
            self.level,
            self.cocycle.iter().map(|c| c.m).collect(),
        )
    }
}

impl<'de> Deserialize<'de> for DihedralElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            level: usize,
            cocycle: Vec<DihedralScalar>,
        }
        let r = Repr::deserialize(d)?;
        let elem = DihedralElement {
            level: r.level,
            cocycle: r.cocycle,
        };
        if elem.cocycle.is_empty() || !elem.label_map_is_bijective() {
            return Err(serde::de::Error::custom("cocycle is not a homeomorphism"));
        }
        Ok(elem)
    }
}

/// The inclusion [[T]] into the dihedral full group: no flips anywhere.
pub fn embed(space: &OdometerType, g: &FullGroupElement) -> DihedralElement {
    DihedralElement::from_cocycle(
        space,
        g.level(),
        g.cocycle()
            .iter()
            .map(|&m| DihedralScalar::translation(m))
            .collect(),
    )
    .expect("full-group element is a homeomorphism")
}

/// The global reflection J: constant cocycle (0, flip).
pub fn gen_j(space: &OdometerType) -> DihedralElement {
    let n = space.n(1).expect("level 1 exists") as usize;
    DihedralElement::from_cocycle(space, 1, vec![DihedralScalar::reflection(); n])
        .expect("reflection is a homeomorphism")
}

/// The local reflection J_{k,l}: T^{2l} J on U(k,l), identity elsewhere.
pub fn gen_j_kl(space: &OdometerType, level: usize, label: u64) -> Result<DihedralElement> {
    let n = space.n(level)?;
    if label >= n {
        return Err(Error::LabelOutOfRange {
            label,
            level,
            n,
        });
    }
    let mut cocycle = vec![DihedralScalar::IDENTITY; n as usize];
    cocycle[label as usize] = DihedralScalar {
        m: 2 * label as i64,
        flip: true,
    };
    DihedralElement::from_cocycle(space, level, cocycle)
}

/// One letter of a level-k generator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DihedralGenerator {
    /// T_{U(k,label)}^power.
    TowerPower { label: u64, power: i64 },
    /// sigma_{U(k,0)} for the given tower permutation.
    Sigma(Perm),
    /// J_{k,label}.
    Flip { label: u64 },
}

/// A word in the level-k generators; recomposition multiplies the letters
/// left to right, so the rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralWord {
    pub level: usize,
    pub letters: Vec<DihedralGenerator>,
}

impl DihedralWord {
    pub fn recompose(&self, space: &OdometerType) -> Result<DihedralElement> {
        use crate::full_group::{return_element, sigma_element};
        use crate::odometer::ClopenSet;
        let mut acc = DihedralElement::identity();
        for letter in &self.letters {
            let next = match letter {
                DihedralGenerator::TowerPower { label, power } => {
                    let cyl = ClopenSet::cylinder(space, self.level, *label)?;
                    embed(space, &return_element(space, &cyl).pow(space, *power))
                }
                DihedralGenerator::Sigma(perm) => {
                    let base = ClopenSet::cylinder(space, self.level, 0)?;
                    embed(space, &sigma_element(space, &base, perm)?)
                }
                DihedralGenerator::Flip { label } => gen_j_kl(space, self.level, *label)?,
            };
            acc = acc.compose(space, &next);
        }
        Ok(acc)
    }
}

/// Decompose a level-k element into the standard generators: clear flips
/// cylinder by cylinder with the local reflections, then use the
/// full-group normal form on the flip-free remainder.
pub fn decompose(
    space: &OdometerType,
    g: &DihedralElement,
    level: usize,
) -> Result<DihedralWord> {
    let c = g.cocycle_at(space, level)?;
    let flipped: Vec<u64> = c
        .iter()
        .enumerate()
        .filter(|(_, s)| s.flip)
        .map(|(l, _)| l as u64)
        .collect();
    // g = flip_free * prod J_{k,l}: the local reflections are involutions
    // with disjoint supports, so right-multiplying clears each flip
    let mut flip_free = g.clone();
    for &l in &flipped {
        flip_free = flip_free.compose(space, &gen_j_kl(space, level, l)?);
    }
    debug_assert!(flip_free.is_flip_free());
    let nf = normal_form(space, &flip_free.to_full_group(space)?, level)?;
    let mut letters = Vec::new();
    for (l, &power) in nf.tower_powers.iter().enumerate() {
        if power != 0 {
            letters.push(DihedralGenerator::TowerPower {
                label: l as u64,
                power,
            });
        }
    }
    if !nf.sigma.is_identity() {
        letters.push(DihedralGenerator::Sigma(nf.sigma));
    }
    for &l in &flipped {
        letters.push(DihedralGenerator::Flip { label: l });
    }
    Ok(DihedralWord { level, letters })
}

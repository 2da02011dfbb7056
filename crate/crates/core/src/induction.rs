//! Finite-index induction machinery for finite groups: left regular
//! representations, coset transversals, and the block decomposition of
//! lambda_G conjugated onto a direct sum of copies of l^2(H).

use crate::error::{Error, Result};
use crate::exact_matrix::ExactMatrix;
use crate::perm::Perm;
use crate::scalar::GaussRational;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
        }
        // Latin square: rows and columns are permutations
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if row_seen[table[i][j]] || col_seen[table[j][i]] {
                    return Err(Error::InvalidGroup("table is not a Latin square".into()));
                }
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let group = FiniteGroup {
            order: n,
            table,
            identity,
        };
        if n <= 24 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)) {
                            return Err(Error::InvalidGroup("table is not associative".into()));
                        }
                    }
                }
            }
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("Latin square rows are bijections")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Check that a subset is a subgroup (closed, with inverses).
    pub fn validate_subgroup(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let mut sorted: Vec<usize> = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&e| e >= self.order) {
            return Err(Error::InvalidCosets("subgroup element out of range".into()));
        }
        if !sorted.contains(&self.identity) {
            return Err(Error::InvalidCosets("subgroup misses the identity".into()));
        }
        for &a in &sorted {
            if sorted.binary_search(&self.inverse(a)).is_err() {
                return Err(Error::InvalidCosets("subgroup not closed under inverse".into()));
            }
            for &b in &sorted {
                if sorted.binary_search(&self.mul(a, b)).is_err() {
                    return Err(Error::InvalidCosets("subgroup not closed under product".into()));
                }
            }
        }
        Ok(sorted)
    }
}

/// A subgroup H together with a left transversal x_1 = e, .., x_n with
/// G the disjoint union of the x_i H.
#[derive(Debug, Clone)]
pub struct CosetSystem {
    pub subgroup: Vec<usize>,
    pub transversal: Vec<usize>,
}

impl CosetSystem {
    /// Validate a user-supplied transversal.
    pub fn new(group: &FiniteGroup, subgroup: &[usize], transversal: Vec<usize>) -> Result<Self> {
        let subgroup = group.validate_subgroup(subgroup)?;
        if transversal.first() != Some(&group.identity()) {
            return Err(Error::InvalidCosets("transversal must start at e".into()));
        }
        let cs = CosetSystem {
            subgroup,
            transversal,
        };
        if !cs.index_map_is_bijective(group) {
            return Err(Error::InvalidCosets(
                "cosets do not partition the group".into(),
            ));
        }
        Ok(cs)
    }

    /// First-found transversal by scanning elements in index order.
    pub fn scan(group: &FiniteGroup, subgroup: &[usize]) -> Result<Self> {
        let subgroup = group.validate_subgroup(subgroup)?;
        let mut covered = vec![false; group.order()];
        let mut transversal = vec![group.identity()];
        for &h in &subgroup {
            covered[h] = true;
        }
        for g in 0..group.order() {
            if !covered[g] {
                transversal.push(g);
                for &h in &subgroup {
                    covered[group.mul(g, h)] = true;
                }
            }
        }
        CosetSystem::new(group, &subgroup, transversal)
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    fn sub_pos(&self, h: usize) -> Option<usize> {
        self.subgroup.binary_search(&h).ok()
    }

    /// The map (i, h) -> x_i h, which must be a bijection onto G for U to
    /// be unitary.
    pub fn index_map_is_bijective(&self, group: &FiniteGroup) -> bool {
        let mut seen = vec![false; group.order()];
        for &x in &self.transversal {
            for &h in &self.subgroup {
                let g = group.mul(x, h);
                if seen[g] {
                    return false;
                }
                seen[g] = true;
            }
        }
        seen.iter().all(|&b| b)
    }
}

/// The left regular representation: the permutation matrix of translation
/// by g on l^2(G).
pub fn regular_rep(group: &FiniteGroup, g: usize) -> Result<ExactMatrix> {
    if g >= group.order() {
        return Err(Error::InvalidGroup(format!("element {g} out of range")));
    }
    let map: Vec<usize> = (0..group.order()).map(|h| group.mul(g, h)).collect();
    Ok(ExactMatrix::permutation(&Perm::new(map)?))
}

/// The regular representation of H on l^2(H), indexed by subgroup position.
pub fn subgroup_regular_rep(
    group: &FiniteGroup,
    cs: &CosetSystem,
    h: usize,
) -> Result<ExactMatrix> {
    if cs.sub_pos(h).is_none() {
        return Err(Error::InvalidCosets(format!("{h} is not in the subgroup")));
    }
    let map: Vec<usize> = cs
        .subgroup
        .iter()
        .map(|&k| cs.sub_pos(group.mul(h, k)).expect("H closed under product"))
        .collect();
    Ok(ExactMatrix::permutation(&Perm::new(map)?))
}

/// The n x n array of |H| x |H| blocks of the conjugated regular
/// representation: block (i, j) is lambda_H(x_i^-1 g x_j) when that element
/// lies in H and zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    pub index: usize,
    pub block_dim: usize,
    /// Row-major n x n array; None encodes a zero block.
    pub blocks: Vec<Option<ExactMatrix>>,
}

impl BlockMatrix {
    pub fn block(&self, i: usize, j: usize) -> Option<&ExactMatrix> {
        self.blocks[i * self.index + j].as_ref()
    }

    /// Assemble into a full (n * |H|)-dimensional matrix.
    pub fn to_matrix(&self) -> ExactMatrix {
        let d = self.index * self.block_dim;
        let mut out = ExactMatrix::zero(d);
        for bi in 0..self.index {
            for bj in 0..self.index {
                if let Some(b) = self.block(bi, bj) {
                    for r in 0..self.block_dim {
                        for c in 0..self.block_dim {
                            *out.get_mut(bi * self.block_dim + r, bj * self.block_dim + c) =
                                b.get(r, c).clone();
                        }
                    }
                }
            }
        }
        out
    }
}

/// Compute the coset-block decomposition of lambda_G(g).
pub fn coset_blocks(
    group: &FiniteGroup,
    cs: &CosetSystem,
    g: usize,
) -> Result<BlockMatrix> {
    if g >= group.order() {
        return Err(Error::InvalidGroup(format!("element {g} out of range")));
    }
    let n = cs.index();
    let mut blocks = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let xi_inv = group.inverse(cs.transversal[i]);
            let elem = group.mul(group.mul(xi_inv, g), cs.transversal[j]);
            blocks.push(if cs.sub_pos(elem).is_some() {
                Some(subgroup_regular_rep(group, cs, elem)?)
            } else {
                None
            });
        }
    }
    Ok(BlockMatrix {
        index: n,
        block_dim: cs.subgroup.len(),
        blocks,
    })
}

/// Independent route: conjugate lambda_G(g) by the basis unitary
/// delta_{(i,h)} -> delta_{x_i h} and read the result in block coordinates.
pub fn conjugated_regular(
    group: &FiniteGroup,
    cs: &CosetSystem,
    g: usize,
) -> Result<ExactMatrix> {
    let lam = regular_rep(group, g)?;
    let n = cs.index();
    let hsize = cs.subgroup.len();
    let d = n * hsize;
    // column index (i, h) corresponds to the group element x_i h
    let col_elem: Vec<usize> = (0..d)
        .map(|c| group.mul(cs.transversal[c / hsize], cs.subgroup[c % hsize]))
        .collect();
    let mut out = ExactMatrix::zero(d);
    for r in 0..d {
        for c in 0..d {
            *out.get_mut(r, c) = lam.get(col_elem[r], col_elem[c]).clone();
        }
    }
    Ok(out)
}

/// The corner identity: block (1,1) of the decomposition of h equals
/// lambda_H(h), for every h in H.
pub fn verify_corner(group: &FiniteGroup, cs: &CosetSystem) -> Result<bool> {
    for &h in &cs.subgroup {
        let blocks = coset_blocks(group, cs, h)?;
        let corner = blocks.block(0, 0);
        let expected = subgroup_regular_rep(group, cs, h)?;
        if corner != Some(&expected) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cyclic group Z_n.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteGroup::new(table).expect("cyclic table is a group")
}

/// The symmetric group S_n as permutations in `Perm::all` order.
pub fn symmetric_group(n: usize) -> FiniteGroup {
    let perms = Perm::all(n);
    let pos = |p: &Perm| perms.iter().position(|q| q == p).expect("closure");
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| pos(&a.compose(b))).collect())
        .collect();
    FiniteGroup::new(table).expect("composition table is a group")
}

/// Indices of the even permutations of `symmetric_group(n)`.
pub fn alternating_subgroup(n: usize) -> Vec<usize> {
    Perm::all(n)
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_even())
        .map(|(i, _)| i)
        .collect()
}

/// The dihedral group of order 8: r^a s^b with index a + 4 b.
pub fn dihedral_8() -> FiniteGroup {
    let idx = |a: usize, b: usize| a + 4 * b;
    let mut table = vec![vec![0usize; 8]; 8];
    for a in 0..4 {
        for b in 0..2 {
            for c in 0..4 {
                for d in 0..2 {
                    // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
                    let e = if b == 0 { (a + c) % 4 } else { (a + 4 - c % 4) % 4 };
                    table[idx(a, b)][idx(c, d)] = idx(e, (b + d) % 2);
                }
            }
        }
    }
    FiniteGroup::new(table).expect("dihedral table is a group")
}

/// The quaternion group {±1, ±i, ±j, ±k}, indexed sign-major as
/// 1, i, j, k, -1, -i, -j, -k.
pub fn quaternion_8() -> FiniteGroup {
    // units: 0 = 1, 1 = i, 2 = j, 3 = k; unit_mul[(a, b)] = (sign, unit)
    fn unit_mul(a: usize, b: usize) -> (bool, usize) {
        match (a, b) {
            (0, x) => (false, x),
            (x, 0) => (false, x),
            (1, 1) | (2, 2) | (3, 3) => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    }
    let mut table = vec![vec![0usize; 8]; 8];
    for sa in 0..2 {
        for ua in 0..4 {
            for sb in 0..2 {
                for ub in 0..4 {
                    let (neg, u) = unit_mul(ua, ub);
                    let sign = (sa + sb + usize::from(neg)) % 2;
                    table[ua + 4 * sa][ub + 4 * sb] = u + 4 * sign;
                }
            }
        }
    }
    FiniteGroup::new(table).expect("quaternion table is a group")
}

/// The built-in small-group catalog used by the CLI.
pub fn catalog_group(name: &str) -> Option<FiniteGroup> {
    match name {
        "s3" => Some(symmetric_group(3)),
        "s4" => Some(symmetric_group(4)),
        "d4" => Some(dihedral_8()),
        "q8" => Some(quaternion_8()),
        _ => name
            .strip_prefix('z')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| (1..=24).contains(&n))
            .map(cyclic_group),
    }
}

/// Named subgroups of the catalog groups.
pub fn catalog_subgroup(group_name: &str, sub_name: &str) -> Option<Vec<usize>> {
    match (group_name, sub_name) {
        ("s3", "a3") => Some(alternating_subgroup(3)),
        ("s4", "a4") => Some(alternating_subgroup(4)),
        ("d4", "rotations") => Some(vec![0, 1, 2, 3]),
        ("q8", "center") => Some(vec![0, 4]),
        _ => {
            if let Some(n) = group_name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
                if sub_name == "half" && n % 2 == 0 {
                    return Some((0..n).step_by(2).collect());
                }
            }
            // explicit comma-separated element list
            sub_name
                .split(',')
                .map(|s| s.trim().parse::<usize>().ok())
                .collect()
        }
    }
}

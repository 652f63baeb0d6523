//! Finite groups as validated Cayley tables, plus the bundled families used
//! by the frame numerics: cyclic, dihedral, symmetric (up to S5) and the
//! Heisenberg groups over Z/p.

use thiserror::Error;

/// Full associativity is checked up to this order; beyond it a deterministic
/// sample of triples is used.
pub const FULL_ASSOC_CHECK_LIMIT: usize = 128;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("Cayley table is not square (order {order}, row {row} has length {len})")]
    NotSquare { order: usize, row: usize, len: usize },
    #[error("table entry {value} at ({row},{col}) out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("row {0} of the Cayley table is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} of the Cayley table is not a permutation")]
    ColNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("the given elements do not form a subgroup: {0}")]
    NotASubgroup(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    /// human-readable element labels
    pub labels: Vec<String>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::BadParams("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { order: n, row: i, len: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: i, col: j, value: v, order: n });
                }
            }
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen[table[i][j]], true) {
                    return Err(GroupError::RowNotPermutation(i));
                }
            }
            let mut seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen[table[j][i]], true) {
                    return Err(GroupError::ColNotPermutation(i));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
            inverse[x] = inv;
        }
        if n <= FULL_ASSOC_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            // deterministic stride sample
            let step = n / 13 + 1;
            for a in (0..n).step_by(step) {
                for b in (0..n).step_by(step) {
                    for c in (0..n).step_by(step) {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        Ok(Self { order: n, table, identity, inverse, labels })
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

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Z/n under addition.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadParams("cyclic group needs n >= 1".into()));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mut g = Self::from_table(table)?;
        g.labels = (0..n).map(|i| i.to_string()).collect();
        Ok(g)
    }

    /// Dihedral group of order 2n; element s^a r^k has index a*n + k and
    /// (s^a r^k)(s^b r^l) = s^{a xor b} r^{(-1)^b k + l}.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n < 1 {
            return Err(GroupError::BadParams("dihedral group needs n >= 1".into()));
        }
        let order = 2 * n;
        let idx = |a: usize, k: usize| a * n + k;
        let mut table = vec![vec![0; order]; order];
        for a in 0..2 {
            for k in 0..n {
                for b in 0..2 {
                    for l in 0..n {
                        let k_eff = if b == 1 { (n - k) % n } else { k };
                        table[idx(a, k)][idx(b, l)] = idx(a ^ b, (k_eff + l) % n);
                    }
                }
            }
        }
        let mut g = Self::from_table(table)?;
        g.labels = (0..order)
            .map(|i| {
                let (a, k) = (i / n, i % n);
                if a == 0 { format!("r{k}") } else { format!("sr{k}") }
            })
            .collect();
        Ok(g)
    }

    /// Rotation subgroup of `dihedral(n)`: indices 0..n.
    pub fn dihedral_rotations(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    /// Symmetric group S_m (m <= 5), elements = permutations of {0..m-1}
    /// in lexicographic order, product = composition (pq)(x) = p(q(x)).
    pub fn symmetric(m: usize) -> Result<Self, GroupError> {
        if !(1..=5).contains(&m) {
            return Err(GroupError::BadParams("symmetric group supported for 1 <= m <= 5".into()));
        }
        let perms = permutations(m);
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let order = perms.len();
        let mut table = vec![vec![0; order]; order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let comp: Vec<usize> = (0..m).map(|x| p[q[x]]).collect();
                table[i][j] = index_of(&comp);
            }
        }
        let mut g = Self::from_table(table)?;
        g.labels = perms
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Ok(g)
    }

    /// Alternating subgroup indices inside `symmetric(m)`.
    pub fn alternating_in_symmetric(m: usize) -> Result<Vec<usize>, GroupError> {
        if !(1..=5).contains(&m) {
            return Err(GroupError::BadParams("symmetric group supported for 1 <= m <= 5".into()));
        }
        let perms = permutations(m);
        Ok(perms
            .iter()
            .enumerate()
            .filter(|(_, p)| perm_sign(p) == 1)
            .map(|(i, _)| i)
            .collect())
    }

    /// Heisenberg group over Z/p: triples (a,b,c) with product
    /// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'); index a*p^2 + b*p + c.
    pub fn heisenberg_mod(p: usize) -> Result<Self, GroupError> {
        if p < 2 {
            return Err(GroupError::BadParams("heisenberg_mod needs p >= 2".into()));
        }
        let order = p * p * p;
        let idx = |a: usize, b: usize, c: usize| a * p * p + b * p + c;
        let mut table = vec![vec![0; order]; order];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for a2 in 0..p {
                        for b2 in 0..p {
                            for c2 in 0..p {
                                table[idx(a, b, c)][idx(a2, b2, c2)] =
                                    idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                            }
                        }
                    }
                }
            }
        }
        let mut g = Self::from_table(table)?;
        g.labels = (0..order)
            .map(|i| format!("({},{},{})", i / (p * p), (i / p) % p, i % p))
            .collect();
        Ok(g)
    }

    /// Closure of the generating set, grown by repeated multiplication.
    pub fn subgroup_generated(&self, generators: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut frontier = vec![self.identity];
        for &g in generators {
            if !member[g] {
                member[g] = true;
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            for &g in generators {
                for y in [self.mul(x, g), self.mul(g, x), self.inv(x)] {
                    if !member[y] {
                        member[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        (0..self.order).filter(|&i| member[i]).collect()
    }

    /// Verify that `elems` is a subgroup (identity, closure, inverses).
    pub fn check_subgroup(&self, elems: &[usize]) -> Result<(), GroupError> {
        let mut member = vec![false; self.order];
        for &e in elems {
            if e >= self.order {
                return Err(GroupError::NotASubgroup(format!("element {e} out of range")));
            }
            member[e] = true;
        }
        if !member[self.identity] {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        for &a in elems {
            if !member[self.inv(a)] {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in elems {
                if !member[self.mul(a, b)] {
                    return Err(GroupError::NotASubgroup(format!("product {a}*{b} escapes")));
                }
            }
        }
        Ok(())
    }

    /// A subgroup as a standalone group, with the local -> global index map.
    pub fn subgroup_group(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        self.check_subgroup(elems)?;
        let mut sorted: Vec<usize> = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let local = |g: usize| sorted.binary_search(&g).unwrap();
        let table = sorted
            .iter()
            .map(|&a| sorted.iter().map(|&b| local(self.mul(a, b))).collect())
            .collect();
        let mut h = FiniteGroup::from_table(table)?;
        h.labels = sorted.iter().map(|&g| self.labels[g].clone()).collect();
        Ok((h, sorted))
    }

    /// Conjugacy classes, each sorted, ordered by minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> =
                (0..self.order).map(|x| self.mul(self.mul(x, g), self.inv(x))).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; m];
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(m, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(m, &mut cur, &mut used, &mut out);
    out
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.mul(4, 5), 3);
        assert_eq!(g.inv(2), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn dihedral_relations() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        let (s, r) = (4, 1); // s = sr0, r = r1
        // s r s^{-1} = r^{-1}
        let conj = g.mul(g.mul(s, r), g.inv(s));
        assert_eq!(conj, g.inv(r));
        assert_eq!(g.mul(s, s), g.identity());
        // rotations form a subgroup
        g.check_subgroup(&FiniteGroup::dihedral_rotations(4)).unwrap();
    }

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // three conjugacy classes: identity, transpositions, 3-cycles
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let a3 = FiniteGroup::alternating_in_symmetric(3).unwrap();
        assert_eq!(a3.len(), 3);
        g.check_subgroup(&a3).unwrap();
    }

    #[test]
    fn a3_generated_by_three_cycle() {
        let g = FiniteGroup::symmetric(3).unwrap();
        // find a 3-cycle: an element of order 3
        let c3 = (0..6)
            .find(|&x| x != g.identity() && g.mul(g.mul(x, x), x) == g.identity() && g.mul(x, x) != g.identity())
            .unwrap();
        let gen = g.subgroup_generated(&[c3]);
        assert_eq!(gen, FiniteGroup::alternating_in_symmetric(3).unwrap());
    }

    #[test]
    fn heisenberg_mod_2_nonabelian_order_8() {
        let g = FiniteGroup::heisenberg_mod(2).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        // center = {(0,0,c)} has order 2
        let center: Vec<usize> = (0..8)
            .filter(|&z| (0..8).all(|x| g.mul(z, x) == g.mul(x, z)))
            .collect();
        assert_eq!(center.len(), 2);
    }

    #[test]
    fn s4_and_s5_valid() {
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::symmetric(5).unwrap().order(), 120);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 0], vec![1, 1]]),
            Err(GroupError::RowNotPermutation(_) | GroupError::ColNotPermutation(_))
        ));
        // latin square that is not associative (order 5 quasigroup)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(t),
            Err(GroupError::NotAssociative(..) | GroupError::NoInverse(_) | GroupError::NoIdentity)
        ));
    }

    #[test]
    fn subgroup_group_reindexes() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let (h, map) = g.subgroup_group(&[0, 2]).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(map, vec![0, 2]);
        assert_eq!(h.mul(1, 1), 0);
    }
}

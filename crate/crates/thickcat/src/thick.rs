//! Thick subcategories and their lattice.
//!
//! A thick subcategory of the bounded derived category of a hereditary
//! algebra is determined by the set of indecomposable modules it contains
//! (shifts are free), so a subcategory is a bitset over the indecomposable
//! table. Closure is computed as a wide closure: kernels and cokernels of
//! morphisms, and middle terms of extensions, between direct sums of at most
//! two indecomposables, with coefficient matrices normalized by row and
//! column scaling. The noncrossing-partition oracle pins the result down on
//! linear orientations.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use crate::ind::IndTable;
use crate::rep::{cokernel, kernel, DirectSum, RepMap};

/// Closure engine with precomputed generation tables.
pub struct ThickEnum<'a> {
    pub table: &'a IndTable,
    /// For each quadruple (i1, i2, j1, j2): the bitset of indecomposables
    /// produced by kernels/cokernels of sampled maps M_i1 ⊕ M_i2 -> M_j1 ⊕
    /// M_j2 and middle terms of sampled extension classes.
    gen: Vec<u64>,
    memo: RefCell<HashMap<u64, u64>>,
}

impl<'a> ThickEnum<'a> {
    pub fn new(table: &'a IndTable) -> ThickEnum<'a> {
        let n = table.len();
        assert!(n <= 64, "bitset representation caps the table at 64");
        let mut gen = vec![0u64; n * n * n * n];
        // coefficient matrices up to row/column scaling: all zero/one
        // patterns, plus a full matrix with one corner varied
        let mut coeff_sets: Vec<[u64; 4]> = Vec::new();
        for mask in 1u32..16 {
            coeff_sets.push([
                u64::from(mask & 1 != 0),
                u64::from(mask & 2 != 0),
                u64::from(mask & 4 != 0),
                u64::from(mask & 8 != 0),
            ]);
        }
        let p = table.field.p();
        let mut extra: Vec<u64> = vec![2 % p, p - 1];
        extra.sort_unstable();
        extra.dedup();
        for lam in extra {
            if lam != 0 && lam != 1 {
                coeff_sets.push([1, 1, 1, lam]);
            }
        }

        for i1 in 0..n {
            for i2 in i1..n {
                for j1 in 0..n {
                    for j2 in j1..n {
                        let mut bits = 0u64;
                        bits |= Self::gen_maps(table, i1, i2, j1, j2, &coeff_sets);
                        bits |= Self::gen_exts(table, i1, i2, j1, j2, &coeff_sets);
                        let idx = ((i1 * n + i2) * n + j1) * n + j2;
                        gen[idx] = bits;
                    }
                }
            }
        }
        ThickEnum { table, gen, memo: RefCell::new(HashMap::new()) }
    }

    fn gen_maps(
        table: &IndTable,
        i1: usize,
        i2: usize,
        j1: usize,
        j2: usize,
        coeffs: &[[u64; 4]],
    ) -> u64 {
        let q = &table.q;
        let blocks = [
            table.hom_dims[i1][j1] > 0,
            table.hom_dims[i1][j2] > 0,
            table.hom_dims[i2][j1] > 0,
            table.hom_dims[i2][j2] > 0,
        ];
        if !blocks.iter().any(|&b| b) {
            return 0;
        }
        let src = DirectSum::new(q, table.field, &[&table.reps[i1], &table.reps[i2]]);
        let tgt = DirectSum::new(q, table.field, &[&table.reps[j1], &table.reps[j2]]);
        let block_map = |si: usize, ti: usize, ind_s: usize, ind_t: usize| -> Option<RepMap> {
            if table.hom_dims[ind_s][ind_t] == 0 {
                return None;
            }
            Some(
                tgt.injection(ti)
                    .compose(&table.hom_basis(ind_s, ind_t)[0])
                    .compose(&src.projection(si)),
            )
        };
        let parts = [
            block_map(0, 0, i1, j1),
            block_map(0, 1, i1, j2),
            block_map(1, 0, i2, j1),
            block_map(1, 1, i2, j2),
        ];
        let mut out = 0u64;
        let mut seen: BTreeSet<[u64; 4]> = BTreeSet::new();
        for cs in coeffs {
            let mut eff = *cs;
            for (k, part) in parts.iter().enumerate() {
                if part.is_none() {
                    eff[k] = 0;
                }
            }
            if eff.iter().all(|&c| c == 0) || !seen.insert(eff) {
                continue;
            }
            let mut f = RepMap::zero(&src.rep, &tgt.rep);
            for (k, part) in parts.iter().enumerate() {
                if let (Some(m), c) = (part, eff[k]) {
                    if c != 0 {
                        f = f.add(&m.scale(c));
                    }
                }
            }
            let (ker, _) = kernel(q, &f);
            let (cok, _) = cokernel(q, &f);
            for (ind, &m) in table.decompose(&ker).iter().enumerate() {
                if m > 0 {
                    out |= 1 << ind;
                }
            }
            for (ind, &m) in table.decompose(&cok).iter().enumerate() {
                if m > 0 {
                    out |= 1 << ind;
                }
            }
        }
        out
    }

    fn gen_exts(
        table: &IndTable,
        i1: usize,
        i2: usize,
        j1: usize,
        j2: usize,
        coeffs: &[[u64; 4]],
    ) -> u64 {
        let q = &table.q;
        // extensions of M_i1 ⊕ M_i2 by M_j1 ⊕ M_j2: class matrix in the four
        // Ext blocks
        let blocks = [
            (i1, j1, 0usize, 0usize),
            (i1, j2, 0, 1),
            (i2, j1, 1, 0),
            (i2, j2, 1, 1),
        ];
        if blocks
            .iter()
            .all(|&(i, j, _, _)| table.ext_dims[i][j] == 0)
        {
            return 0;
        }
        let src = DirectSum::new(q, table.field, &[&table.reps[i1], &table.reps[i2]]);
        let tgt = DirectSum::new(q, table.field, &[&table.reps[j1], &table.reps[j2]]);
        let clen = crate::rep::cocycle_len(q, &src.rep, &tgt.rep);
        // embed each block's basis cocycle into the sum's cocycle space
        let mut block_vecs: Vec<Option<Vec<u64>>> = Vec::new();
        for &(i, j, si, ti) in &blocks {
            if table.ext_dims[i][j] == 0 {
                block_vecs.push(None);
                continue;
            }
            let z = table.ext_space(i, j).basis_cocycle(0);
            let comps = crate::rep::cocycle_components(q, &table.reps[i], &table.reps[j], &z);
            let mut vec = vec![0u64; clen];
            let mut off = 0;
            for (ai, &(s, t)) in q.arrows().iter().enumerate() {
                let rows = tgt.rep.dims[t];
                let cols = src.rep.dims[s];
                // the block sits at the (ti, si) offsets inside the sum
                if comps[ai].rows > 0 && comps[ai].cols > 0 {
                    let ro = tgt.injection(ti).comps[t]
                        .col(0)
                        .iter()
                        .position(|&x| x == 1)
                        .expect("injection column is a unit vector");
                    let co = src.injection(si).comps[s]
                        .col(0)
                        .iter()
                        .position(|&x| x == 1)
                        .expect("injection column is a unit vector");
                    for r in 0..comps[ai].rows {
                        for c in 0..comps[ai].cols {
                            vec[off + (ro + r) * cols + (co + c)] = comps[ai].get(r, c);
                        }
                    }
                }
                off += rows * cols;
            }
            block_vecs.push(Some(vec));
        }
        let mut out = 0u64;
        let mut seen: BTreeSet<[u64; 4]> = BTreeSet::new();
        for cs in coeffs {
            let mut eff = *cs;
            for (k, bv) in block_vecs.iter().enumerate() {
                if bv.is_none() {
                    eff[k] = 0;
                }
            }
            if eff.iter().all(|&c| c == 0) || !seen.insert(eff) {
                continue;
            }
            let mut z = vec![0u64; clen];
            for (k, bv) in block_vecs.iter().enumerate() {
                if let (Some(v), c) = (bv, eff[k]) {
                    if c != 0 {
                        for (dst, &x) in z.iter_mut().zip(v) {
                            *dst = table.field.add(*dst, table.field.mul(c, x));
                        }
                    }
                }
            }
            let e = crate::rep::extension_middle(q, &src.rep, &tgt.rep, &z);
            for (ind, &m) in table.decompose(&e).iter().enumerate() {
                if m > 0 {
                    out |= 1 << ind;
                }
            }
        }
        out
    }

    /// Thick closure of a set of indecomposables.
    pub fn closure(&self, start: u64) -> u64 {
        if let Some(&c) = self.memo.borrow().get(&start) {
            return c;
        }
        let n = self.table.len();
        let mut t = start;
        loop {
            let mut next = t;
            let members: Vec<usize> = (0..n).filter(|&i| t & (1 << i) != 0).collect();
            for (a, &i1) in members.iter().enumerate() {
                for &i2 in &members[a..] {
                    for (b, &j1) in members.iter().enumerate() {
                        for &j2 in &members[b..] {
                            let idx = ((i1 * n + i2) * n + j1) * n + j2;
                            next |= self.gen[idx];
                        }
                    }
                }
            }
            if next == t {
                break;
            }
            t = next;
        }
        self.memo.borrow_mut().insert(start, t);
        t
    }

    /// All thick subcategories, as sorted bitsets.
    pub fn enumerate(&self) -> Vec<u64> {
        let n = self.table.len();
        let mut out: BTreeSet<u64> = BTreeSet::new();
        for s in 0..(1u64 << n) {
            out.insert(self.closure(s));
        }
        out.into_iter().collect()
    }

    /// Right orthogonal: indecomposables with no graded morphism from `u`.
    pub fn perp_right(&self, u: u64) -> u64 {
        let n = self.table.len();
        let mut out = 0u64;
        for v in 0..n {
            let clean = (0..n)
                .filter(|&i| u & (1 << i) != 0)
                .all(|i| self.table.hom_dims[i][v] == 0 && self.table.ext_dims[i][v] == 0);
            if clean {
                out |= 1 << v;
            }
        }
        out
    }

    /// Left orthogonal: indecomposables with no graded morphism into `u`.
    pub fn perp_left(&self, u: u64) -> u64 {
        let n = self.table.len();
        let mut out = 0u64;
        for v in 0..n {
            let clean = (0..n)
                .filter(|&i| u & (1 << i) != 0)
                .all(|i| self.table.hom_dims[v][i] == 0 && self.table.ext_dims[v][i] == 0);
            if clean {
                out |= 1 << v;
            }
        }
        out
    }

    /// An exceptional sequence generating `u`: the smallest subset of its
    /// indecomposables whose closure is `u` and whose graded-hom digraph is
    /// acyclic, listed so that all graded morphisms point forwards.
    pub fn exceptional_sequence(&self, u: u64) -> Vec<usize> {
        let n = self.table.len();
        let members: Vec<usize> = (0..n).filter(|&i| u & (1 << i) != 0).collect();
        if members.is_empty() {
            return Vec::new();
        }
        for size in 1..=members.len() {
            let mut found: Option<Vec<usize>> = None;
            subsets_of_size(&members, size, &mut |s| {
                if found.is_some() {
                    return;
                }
                let bits = s.iter().fold(0u64, |b, &i| b | (1 << i));
                if self.closure(bits) != u {
                    return;
                }
                if let Some(order) = self.acyclic_order(s) {
                    found = Some(order);
                }
            });
            if let Some(seq) = found {
                return seq;
            }
        }
        unreachable!("every thick subcategory admits an exceptional sequence");
    }

    /// Topological order of the graded-hom digraph on `s`, if acyclic.
    fn acyclic_order(&self, s: &[usize]) -> Option<Vec<usize>> {
        let k = s.len();
        let edge = |a: usize, b: usize| {
            self.table.hom_dims[s[a]][s[b]] > 0 || self.table.ext_dims[s[a]][s[b]] > 0
        };
        let mut indeg = vec![0usize; k];
        for a in 0..k {
            for b in 0..k {
                if a != b && edge(a, b) {
                    indeg[b] += 1;
                }
            }
        }
        let mut used = vec![false; k];
        let mut order = Vec::new();
        while order.len() < k {
            let next = (0..k).find(|&a| !used[a] && indeg[a] == 0)?;
            used[next] = true;
            order.push(s[next]);
            for b in 0..k {
                if !used[b] && edge(next, b) {
                    indeg[b] -= 1;
                }
            }
        }
        Some(order)
    }
}

fn subsets_of_size(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::new(), f);
}

/// The lattice of thick subcategories: meet is intersection, join is the
/// closure of the union.
pub struct ThickLattice {
    pub elements: Vec<u64>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    index: HashMap<u64, usize>,
}

impl ThickLattice {
    pub fn compute(en: &ThickEnum) -> ThickLattice {
        let elements = en.enumerate();
        let index: HashMap<u64, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = elements.len();
        let mut meet = vec![vec![0usize; m]; m];
        let mut join = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                let inter = elements[i] & elements[j];
                meet[i][j] = *index
                    .get(&inter)
                    .expect("intersection of thick subcategories is thick");
                join[i][j] = index[&en.closure(elements[i] | elements[j])];
            }
        }
        ThickLattice { elements, meet, join, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, bits: u64) -> Option<usize> {
        self.index.get(&bits).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i] & !self.elements[j] == 0
    }

    pub fn bottom(&self) -> usize {
        self.index[&0]
    }

    pub fn top(&self) -> usize {
        *self.index
            .get(self.elements.iter().max().unwrap())
            .expect("top element present")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::nc::thick_oracle;
    use crate::quiver::Quiver;

    fn setup(n: usize, p: u64) -> IndTable {
        IndTable::new(&Quiver::linear_a(n), FieldSpec::new(p).unwrap())
    }

    #[test]
    fn closure_matches_noncrossing_oracle_small() {
        for p in [2u64, 101] {
            for n in 1..=3 {
                let t = setup(n, p);
                let en = ThickEnum::new(&t);
                let got: BTreeSet<u64> = en.enumerate().into_iter().collect();
                assert_eq!(got, thick_oracle(&t), "A{n}, p = {p}");
            }
        }
    }

    #[test]
    fn closure_matches_noncrossing_oracle_a4() {
        let t = setup(4, 101);
        let en = ThickEnum::new(&t);
        let got: BTreeSet<u64> = en.enumerate().into_iter().collect();
        assert_eq!(got, thick_oracle(&t));
    }

    #[test]
    fn closure_matches_noncrossing_oracle_a5() {
        let t = setup(5, 101);
        let en = ThickEnum::new(&t);
        let got: BTreeSet<u64> = en.enumerate().into_iter().collect();
        assert_eq!(got, thick_oracle(&t));
    }

    #[test]
    fn closure_zigzag_count() {
        // orientation changes the lattice members but not the count
        let q = Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap();
        let t = IndTable::new(&q, FieldSpec::new(101).unwrap());
        let en = ThickEnum::new(&t);
        assert_eq!(en.enumerate().len(), 14);
    }

    #[test]
    fn lattice_structure_a2() {
        let t = setup(2, 101);
        let en = ThickEnum::new(&t);
        let lat = ThickLattice::compute(&en);
        assert_eq!(lat.len(), 5);
        let bot = lat.bottom();
        let top = lat.top();
        for i in 0..lat.len() {
            assert!(lat.leq(bot, i));
            assert!(lat.leq(i, top));
            assert_eq!(lat.meet[i][top], i);
            assert_eq!(lat.join[i][bot], i);
            for j in 0..lat.len() {
                // commutativity and order consistency
                assert_eq!(lat.meet[i][j], lat.meet[j][i]);
                assert_eq!(lat.join[i][j], lat.join[j][i]);
                assert!(lat.leq(lat.meet[i][j], i));
                assert!(lat.leq(i, lat.join[i][j]));
            }
        }
    }

    #[test]
    fn exceptional_sequences_generate() {
        let t = setup(3, 101);
        let en = ThickEnum::new(&t);
        for &u in &en.enumerate() {
            let seq = en.exceptional_sequence(u);
            let bits = seq.iter().fold(0u64, |b, &i| b | (1 << i));
            assert_eq!(en.closure(bits), u);
            // no graded morphisms backwards
            for (a, &ea) in seq.iter().enumerate() {
                for &eb in seq.iter().skip(a + 1) {
                    assert_eq!(t.hom_dims[eb][ea], 0);
                    assert_eq!(t.ext_dims[eb][ea], 0);
                }
            }
        }
    }

    #[test]
    fn perps_are_thick() {
        let t = setup(3, 101);
        let en = ThickEnum::new(&t);
        for &u in &en.enumerate() {
            let r = en.perp_right(u);
            let l = en.perp_left(u);
            assert_eq!(en.closure(r), r, "right perp is thick");
            assert_eq!(en.closure(l), l, "left perp is thick");
        }
    }
}

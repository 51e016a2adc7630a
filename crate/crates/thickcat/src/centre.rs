//! The commuting relation on thick subcategories and the centre of a
//! sublattice.
//!
//! Two thick subcategories commute when every morphism between their objects,
//! in either direction and in both graded degrees, factors through an object
//! of their meet. Factorization through a direct sum splits componentwise, so
//! the test only needs indecomposable endpoints and indecomposable middle
//! objects. The centre of a sublattice collects the elements commuting with
//! everything in it.

use crate::bousfield::Localizer;
use crate::derived::{graded_hom_basis, graded_hom_dim, solve_postcompose, DObject, Morphism};
use crate::field::Mat;
use crate::ind::IndTable;
use crate::thick::{ThickEnum, ThickLattice};
use crate::verdier::WINDOW;

fn bits(set: u64, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| set & (1 << i) != 0)
}

/// Basis of the subspace of Hom^d(M, N) spanned by composites through
/// members of W, for d in {0, 1}. Degree 1 collects both mixed composites
/// (hom then ext, ext then hom); a composite of two degree-1 classes
/// vanishes for hereditary algebras.
pub fn factoring_subspace(table: &IndTable, m: usize, n: usize, d: i64, w_bits: u64) -> Mat {
    let field = table.field;
    let full = match d {
        0 => table.hom_dims[m][n],
        1 => table.ext_dims[m][n],
        _ => 0,
    };
    let mut span = Mat::zeros(field, full, 0);
    if full == 0 {
        return span;
    }
    for w in bits(w_bits, table.len()) {
        let mut scalars = Vec::new();
        match d {
            0 => {
                if table.hom_dims[m][w] > 0 && table.hom_dims[w][n] > 0 {
                    scalars.push(table.yoneda_hh(m, w, n));
                }
            }
            1 => {
                if table.hom_dims[m][w] > 0 && table.ext_dims[w][n] > 0 {
                    scalars.push(table.yoneda_he(m, w, n));
                }
                if table.ext_dims[m][w] > 0 && table.hom_dims[w][n] > 0 {
                    scalars.push(table.yoneda_eh(m, w, n));
                }
            }
            _ => {}
        }
        for s in scalars {
            if s != 0 {
                span = span.hstack(&Mat::column(field, &[s]));
            }
        }
    }
    span.column_space()
}

/// Do U and V commute? True iff every graded morphism between their
/// indecomposables, in either direction, factors through the meet U ∧ V.
pub fn commutes(table: &IndTable, u: u64, v: u64) -> bool {
    let w = u & v;
    let n = table.len();
    for a in bits(u, n) {
        for b in bits(v, n) {
            for (s, t) in [(a, b), (b, a)] {
                for d in 0..=1i64 {
                    let full = match d {
                        0 => table.hom_dims[s][t],
                        _ => table.ext_dims[s][t],
                    };
                    if full > 0 && factoring_subspace(table, s, t, d, w).cols < full {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The symmetric boolean matrix of the commuting relation over a lattice.
pub struct CommutingMatrix {
    pub entries: Vec<Vec<bool>>,
}

impl CommutingMatrix {
    pub fn compute(table: &IndTable, lat: &ThickLattice) -> CommutingMatrix {
        let m = lat.len();
        let mut entries = vec![vec![false; m]; m];
        for i in 0..m {
            for j in i..m {
                let c = commutes(table, lat.elements[i], lat.elements[j]);
                entries[i][j] = c;
                entries[j][i] = c;
            }
        }
        for (i, row) in entries.iter().enumerate() {
            debug_assert!(row[i], "every subcategory commutes with itself");
        }
        CommutingMatrix { entries }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i][j]
    }
}

/// Is a subset of lattice indices a bounded sublattice?
pub fn is_sublattice(lat: &ThickLattice, sub: &[usize]) -> bool {
    let set: std::collections::BTreeSet<usize> = sub.iter().copied().collect();
    if !set.contains(&lat.bottom()) || !set.contains(&lat.top()) {
        return false;
    }
    for &i in &set {
        for &j in &set {
            if !set.contains(&lat.meet[i][j]) || !set.contains(&lat.join[i][j]) {
                return false;
            }
        }
    }
    true
}

/// The centre of a sublattice: its members commuting with everything in it.
pub fn centre(cm: &CommutingMatrix, sub: &[usize]) -> Vec<usize> {
    sub.iter()
        .copied()
        .filter(|&i| sub.iter().all(|&j| cm.get(i, j)))
        .collect()
}

/// Check the lattice algebra of central elements over a sublattice: the
/// centre is a bounded sublattice, meets and joins of central elements are
/// central, and central elements distribute over the whole sublattice in
/// both directions.
pub fn verify_central_algebra(lat: &ThickLattice, cm: &CommutingMatrix, sub: &[usize]) -> bool {
    let z = centre(cm, sub);
    let zset: std::collections::BTreeSet<usize> = z.iter().copied().collect();
    if !is_sublattice(lat, &z) {
        return false;
    }
    for &u in &z {
        for &v in &z {
            if !zset.contains(&lat.meet[u][v]) || !zset.contains(&lat.join[u][v]) {
                return false;
            }
            for &w in sub {
                let lhs = lat.join[lat.meet[u][w]][lat.meet[v][w]];
                let rhs = lat.meet[lat.join[u][v]][w];
                if lhs != rhs {
                    return false;
                }
                let lhs = lat.meet[lat.join[u][w]][lat.join[v][w]];
                let rhs = lat.join[lat.meet[u][v]][w];
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Necessary criterion for centrality: the two graded perpendiculars agree.
pub fn adjoint_criterion(en: &ThickEnum, u: u64) -> bool {
    en.perp_left(u) == en.perp_right(u)
}

/// Do U/S and V/S commute in the quotient by S ⊆ U ∧ V? The factorization
/// test runs on quotient Hom spaces Hom(x, L_S y[n]) with composition
/// through localized objects of the meet.
pub fn commutes_in_quotient(loc: &Localizer, s: u64, u: u64, v: u64) -> bool {
    assert_eq!(s & !u, 0, "U must contain S");
    assert_eq!(s & !v, 0, "V must contain S");
    let table = loc.table;
    let w = u & v;
    let n = table.len();
    for a in bits(u, n) {
        for b in bits(v, n) {
            for (src, tgt) in [(a, b), (b, a)] {
                if !quotient_factoring_full(loc, s, w, src, tgt) {
                    return false;
                }
            }
        }
    }
    true
}

/// Coordinates of a morphism in the elementary basis of its graded hom space.
fn morphism_coords(table: &IndTable, f: &Morphism) -> Vec<u64> {
    let mut out = Vec::new();
    for (j, &tgt) in f.target.items.iter().enumerate() {
        for (i, &src) in f.source.items.iter().enumerate() {
            let e = tgt.1 + f.degree - src.1;
            let dim = match e {
                0 => table.hom_dims[src.0][tgt.0],
                1 => table.ext_dims[src.0][tgt.0],
                _ => 0,
            };
            if dim > 0 {
                out.push(f.mat.get(j, i));
            }
        }
    }
    out
}

fn quotient_factoring_full(loc: &Localizer, s: u64, w_bits: u64, a: usize, b: usize) -> bool {
    let table = loc.table;
    let field = table.field;
    let ao = DObject::of_ind(a, 0);
    let lb = loc.triangle(s, &DObject::of_ind(b, 0)).l;
    for n in WINDOW.0..=WINDOW.1 {
        let lbn = lb.shift(n);
        let full = graded_hom_dim(table, &ao, &lbn, 0);
        if full == 0 {
            continue;
        }
        let mut span = Mat::zeros(field, full, 0);
        for w in bits(w_bits, table.len()) {
            let tw = loc.triangle(s, &DObject::of_ind(w, 0));
            for m in WINDOW.0..=WINDOW.1 {
                let lw = tw.l.shift(m);
                let fs = graded_hom_basis(table, &ao, &lw, 0);
                if fs.is_empty() {
                    continue;
                }
                let wobj = DObject::of_ind(w, m);
                for g in graded_hom_basis(table, &wobj, &lbn, 0) {
                    // unique extension of g along w[m] -> L_S w[m]
                    let (ghat, unique) =
                        solve_postcompose(table, &tw.map_in.shift(m), &g)
                            .expect("quotient composition lift exists");
                    assert!(unique, "quotient composition lift is unique");
                    for f in &fs {
                        let comp = ghat.compose(table, f);
                        let coords = morphism_coords(table, &comp);
                        span = span.hstack(&Mat::column(field, &coords));
                    }
                }
            }
        }
        if span.rank() < full {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::quiver::Quiver;

    fn setup(n: usize) -> IndTable {
        IndTable::new(&Quiver::linear_a(n), FieldSpec::new(101).unwrap())
    }

    fn a2_parts(t: &IndTable) -> (usize, usize, usize) {
        (
            t.index_of((0, 0, 0)).unwrap(),
            t.index_of((0, 1, 1)).unwrap(),
            t.index_of((0, 0, 1)).unwrap(),
        )
    }

    #[test]
    fn factoring_subspace_examples() {
        let t = setup(2);
        let (s1, s2, p) = a2_parts(&t);
        let all = (1u64 << t.len()) - 1;
        // full middle category realizes the whole space
        assert_eq!(factoring_subspace(&t, s2, p, 0, all).cols, 1);
        assert_eq!(factoring_subspace(&t, s1, s2, 1, all).cols, 1);
        // empty middle realizes nothing
        assert_eq!(factoring_subspace(&t, s2, p, 0, 0).cols, 0);
        // Ext^1(S1, S2) does not factor through thick(P)
        assert_eq!(factoring_subspace(&t, s1, s2, 1, 1 << p).cols, 0);
    }

    #[test]
    fn commutes_a2() {
        let t = setup(2);
        let (s1, s2, p) = a2_parts(&t);
        assert!(!commutes(&t, 1 << s1, 1 << s2));
        for u in [0u64, 1 << s1, 1 << s2, 1 << p] {
            assert!(commutes(&t, u, u));
            assert!(commutes(&t, 0, u));
            let all = (1u64 << t.len()) - 1;
            assert!(commutes(&t, u, all), "nested pairs commute");
        }
    }

    #[test]
    fn centre_a2_is_trivial() {
        let t = setup(2);
        let en = ThickEnum::new(&t);
        let lat = ThickLattice::compute(&en);
        let cm = CommutingMatrix::compute(&t, &lat);
        let sub: Vec<usize> = (0..lat.len()).collect();
        let z = centre(&cm, &sub);
        assert_eq!(z, vec![lat.bottom(), lat.top()].into_iter().collect::<Vec<_>>());
        assert!(verify_central_algebra(&lat, &cm, &sub));
    }

    #[test]
    fn chain_sublattice_is_all_central() {
        let t = setup(2);
        let en = ThickEnum::new(&t);
        let lat = ThickLattice::compute(&en);
        let cm = CommutingMatrix::compute(&t, &lat);
        let (_, s2, _) = a2_parts(&t);
        let mid = lat.index_of(en.closure(1 << s2)).unwrap();
        let chain = vec![lat.bottom(), mid, lat.top()];
        assert_eq!(centre(&cm, &chain), chain);
        assert!(verify_central_algebra(&lat, &cm, &chain));
    }

    #[test]
    fn disjoint_union_is_boolean_central() {
        let q = Quiver::disjoint_linear(&[1, 1]);
        let t = IndTable::new(&q, FieldSpec::new(2).unwrap());
        let en = ThickEnum::new(&t);
        let lat = ThickLattice::compute(&en);
        let cm = CommutingMatrix::compute(&t, &lat);
        assert_eq!(lat.len(), 4);
        let sub: Vec<usize> = (0..lat.len()).collect();
        assert_eq!(centre(&cm, &sub), sub);
        assert!(verify_central_algebra(&lat, &cm, &sub));
    }

    #[test]
    fn adjoint_criterion_a2() {
        let t = setup(2);
        let en = ThickEnum::new(&t);
        let (s1, s2, p) = a2_parts(&t);
        assert!(!adjoint_criterion(&en, 1 << s2));
        assert_eq!(en.perp_right(1 << s2), 1 << s1);
        assert_eq!(en.perp_left(1 << s2), 1 << p);
        assert!(adjoint_criterion(&en, 0));
        assert!(adjoint_criterion(&en, (1 << t.len()) - 1));
        // soundness: central elements always pass
        let lat = ThickLattice::compute(&en);
        let cm = CommutingMatrix::compute(&t, &lat);
        let sub: Vec<usize> = (0..lat.len()).collect();
        for &i in &centre(&cm, &sub) {
            assert!(adjoint_criterion(&en, lat.elements[i]));
        }
    }

    #[test]
    fn quotient_commuting_reduces_and_trivializes() {
        let t = setup(2);
        let en = ThickEnum::new(&t);
        let loc = Localizer::new(&t, &en);
        let elems = en.enumerate();
        // S = 0 agrees with the plain commuting test
        for &u in &elems {
            for &v in &elems {
                assert_eq!(
                    commutes_in_quotient(&loc, 0, u, v),
                    commutes(&t, u, v),
                    "u = {u:b}, v = {v:b}"
                );
            }
        }
        // S = U makes everything over U commute
        for &u in &elems {
            for &v in &elems {
                if u & !v != 0 {
                    continue;
                }
                assert!(commutes_in_quotient(&loc, u, u, v));
            }
        }
        // the quotient by thick(S2) is a 2-chain: all pairs commute
        let (_, s2, _) = a2_parts(&t);
        let s = en.closure(1 << s2);
        for &u in &elems {
            for &v in &elems {
                if s & !u != 0 || s & !v != 0 {
                    continue;
                }
                assert!(commutes_in_quotient(&loc, s, u, v), "u = {u:b}, v = {v:b}");
            }
        }
    }
}

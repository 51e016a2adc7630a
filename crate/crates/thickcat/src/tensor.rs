//! The pointwise tensor product on the module category: decomposition tables
//! for products of indecomposables, enumeration of thick tensor ideals, and
//! the commuting audit over the ideals.

use std::collections::BTreeSet;

use crate::centre::commutes;
use crate::ind::IndTable;
use crate::quiver::Quiver;
use crate::rep::{tensor, Rep};
use crate::thick::ThickLattice;

/// Decompositions of all pairwise tensor products of indecomposables,
/// as multiplicity vectors over the indecomposable list.
pub struct TensorTable {
    /// products[i][j][s] = multiplicity of Ms in Mi ⊗ Mj.
    pub products: Vec<Vec<Vec<usize>>>,
    /// Multiplicity vector of the unit object (k at every vertex, identity
    /// arrows).
    pub unit: Vec<usize>,
}

impl TensorTable {
    pub fn new(q: &Quiver, table: &IndTable) -> TensorTable {
        let n = table.len();
        let products: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| table.decompose(&tensor(q, &table.reps[i], &table.reps[j])))
                    .collect()
            })
            .collect();
        let unit = table.decompose(&Rep::unit(q, table.field));
        let out = TensorTable { products, unit };
        out.assert_laws(q, table);
        out
    }

    /// Commutativity, unit laws, and associativity on decompositions.
    fn assert_laws(&self, q: &Quiver, table: &IndTable) {
        let n = table.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(self.products[i][j], self.products[j][i], "commutativity");
            }
        }
        let unit_rep = Rep::unit(q, table.field);
        for i in 0..n {
            let d = table.decompose(&tensor(q, &unit_rep, &table.reps[i]));
            let mut e = vec![0usize; n];
            e[i] = 1;
            assert_eq!(d, e, "unit law");
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = tensor(
                        q,
                        &tensor(q, &table.reps[i], &table.reps[j]),
                        &table.reps[k],
                    );
                    let right = tensor(
                        q,
                        &table.reps[i],
                        &tensor(q, &table.reps[j], &table.reps[k]),
                    );
                    assert_eq!(
                        table.decompose(&left),
                        table.decompose(&right),
                        "associativity"
                    );
                }
            }
        }
    }

    /// Bitset of the summands of the unit.
    pub fn unit_bits(&self) -> u64 {
        self.unit
            .iter()
            .enumerate()
            .fold(0u64, |b, (i, &m)| if m > 0 { b | (1 << i) } else { b })
    }
}

/// Indices of lattice elements that are thick tensor ideals: closed under
/// tensoring with every indecomposable. The result is checked to be closed
/// under meet and join.
pub fn enumerate_tensor_ideals(lat: &ThickLattice, tt: &TensorTable) -> Vec<usize> {
    let n = tt.products.len();
    let ideal = |bits: u64| -> bool {
        (0..n).filter(|&u| bits & (1 << u) != 0).all(|u| {
            (0..n).all(|x| {
                tt.products[u][x]
                    .iter()
                    .enumerate()
                    .all(|(s, &m)| m == 0 || bits & (1 << s) != 0)
            })
        })
    };
    let out: Vec<usize> = (0..lat.len()).filter(|&i| ideal(lat.elements[i])).collect();
    let set: BTreeSet<usize> = out.iter().copied().collect();
    for &i in &out {
        for &j in &out {
            assert!(set.contains(&lat.meet[i][j]), "ideals closed under meet");
            assert!(set.contains(&lat.join[i][j]), "ideals closed under join");
        }
    }
    out
}

/// Commuting audit over the tensor ideals: the restricted commuting matrix
/// plus the list of non-commuting ideal pairs.
pub struct TensorAudit {
    pub ideals: Vec<usize>,
    pub commuting: Vec<Vec<bool>>,
    pub noncommuting_pairs: Vec<(usize, usize)>,
}

pub fn tensor_commuting_audit(
    table: &IndTable,
    lat: &ThickLattice,
    ideals: &[usize],
) -> TensorAudit {
    let k = ideals.len();
    let mut commuting = vec![vec![false; k]; k];
    let mut noncommuting_pairs = Vec::new();
    for a in 0..k {
        for b in 0..k {
            commuting[a][b] = commutes(table, lat.elements[ideals[a]], lat.elements[ideals[b]]);
            if a < b && !commuting[a][b] {
                noncommuting_pairs.push((ideals[a], ideals[b]));
            }
        }
    }
    TensorAudit { ideals: ideals.to_vec(), commuting, noncommuting_pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::thick::ThickEnum;

    fn e(n: usize, i: usize) -> Vec<usize> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn a2_products_and_ideals() {
        let q = Quiver::linear_a(2);
        let t = IndTable::new(&q, FieldSpec::new(101).unwrap());
        let s1 = t.index_of((0, 0, 0)).unwrap();
        let s2 = t.index_of((0, 1, 1)).unwrap();
        let p = t.index_of((0, 0, 1)).unwrap();
        let tt = TensorTable::new(&q, &t);
        assert_eq!(tt.unit, e(3, p));
        assert_eq!(tt.products[s1][s2], vec![0, 0, 0]);
        assert_eq!(tt.products[p][p], e(3, p));
        assert_eq!(tt.products[p][s1], e(3, s1));
        let en = ThickEnum::new(&t);
        let lat = ThickLattice::compute(&en);
        let ideals = enumerate_tensor_ideals(&lat, &tt);
        // every thick subcategory except thick(P) = thick(unit)
        assert_eq!(ideals.len(), 4);
        let thick_p = lat.index_of(en.closure(1 << p)).unwrap();
        assert!(!ideals.contains(&thick_p));
        let audit = tensor_commuting_audit(&t, &lat, &ideals);
        let u = lat.index_of(1 << s1).unwrap();
        let v = lat.index_of(1 << s2).unwrap();
        assert!(audit.noncommuting_pairs.contains(&(u.min(v), u.max(v))));
    }

    #[test]
    fn semisimple_fixture_is_rigid() {
        let q = Quiver::disjoint_linear(&[1, 1]);
        let t = IndTable::new(&q, FieldSpec::new(101).unwrap());
        let tt = TensorTable::new(&q, &t);
        let en = ThickEnum::new(&t);
        let lat = ThickLattice::compute(&en);
        let ideals = enumerate_tensor_ideals(&lat, &tt);
        assert_eq!(ideals.len(), 4, "all thick subcategories are ideals");
        let audit = tensor_commuting_audit(&t, &lat, &ideals);
        assert!(audit.noncommuting_pairs.is_empty());
        // the unit generates everything
        assert_eq!(en.closure(tt.unit_bits()), (1u64 << t.len()) - 1);
    }
}

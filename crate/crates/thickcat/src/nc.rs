//! Independent oracle for the set of thick subcategories of a linearly
//! oriented type-A quiver: noncrossing partitions.
//!
//! For the linear A_m quiver the thick subcategories biject with noncrossing
//! partitions of {0, 1, ..., m}: a block containing a < b contributes the
//! interval module supported on vertices a+1..b. The count is the Catalan
//! number C_{m+1}. For disjoint unions of linear quivers the sets multiply
//! componentwise.

use std::collections::BTreeSet;

use crate::ind::IndTable;

/// All set partitions of {0, .., n-1}, as block lists.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for x in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for k in 0..p.len() {
                let mut q = p.clone();
                q[k].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Does the partition have two crossing blocks (a < b < c < d with a, c in
/// one block and b, d in another)?
fn is_crossing(p: &[Vec<usize>]) -> bool {
    for (bi, b1) in p.iter().enumerate() {
        for b2 in p.iter().skip(bi + 1) {
            for &a in b1 {
                for &c in b1 {
                    if a >= c {
                        continue;
                    }
                    for &b in b2 {
                        for &d in b2 {
                            if b >= d {
                                continue;
                            }
                            if a < b && b < c && c < d {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// Noncrossing partitions of {0, .., n-1}.
pub fn noncrossing_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    set_partitions(n)
        .into_iter()
        .filter(|p| !is_crossing(p))
        .collect()
}

/// Expected thick subcategories (as indecomposable bitsets) of a quiver whose
/// arrows all point forwards along each component.
pub fn thick_oracle(table: &IndTable) -> BTreeSet<u64> {
    assert!(
        table.q.is_linear(),
        "the noncrossing oracle needs the linear orientation"
    );
    // per component, the list of local thick subcategories as bitsets
    let mut per_comp: Vec<Vec<u64>> = Vec::new();
    for (c, comp) in table.q.components().iter().enumerate() {
        let m = comp.len();
        let mut local = Vec::new();
        for p in noncrossing_partitions(m + 1) {
            let mut bits = 0u64;
            for block in &p {
                for (ai, &a) in block.iter().enumerate() {
                    for &b in block.iter().skip(ai + 1) {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        // interval on vertices lo+1 ..= hi, i.e. positions lo..hi-1
                        let idx = table
                            .index_of((c, lo, hi - 1))
                            .expect("interval exists in the table");
                        bits |= 1 << idx;
                    }
                }
            }
            local.push(bits);
        }
        per_comp.push(local);
    }
    // componentwise products
    let mut acc: Vec<u64> = vec![0];
    for local in &per_comp {
        let mut next = Vec::new();
        for &a in &acc {
            for &b in local {
                next.push(a | b);
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::quiver::Quiver;

    #[test]
    fn catalan_counts() {
        assert_eq!(noncrossing_partitions(2).len(), 2);
        assert_eq!(noncrossing_partitions(3).len(), 5);
        assert_eq!(noncrossing_partitions(4).len(), 14);
        assert_eq!(noncrossing_partitions(5).len(), 42);
    }

    #[test]
    fn oracle_counts() {
        for (n, expect) in [(1usize, 2usize), (2, 5), (3, 14), (4, 42)] {
            let t = IndTable::new(&Quiver::linear_a(n), FieldSpec::new(101).unwrap());
            assert_eq!(thick_oracle(&t).len(), expect);
        }
        // disjoint union multiplies
        let t = IndTable::new(&Quiver::disjoint_linear(&[1, 1]), FieldSpec::new(101).unwrap());
        assert_eq!(thick_oracle(&t).len(), 4);
    }

    #[test]
    fn oracle_contains_extremes() {
        let t = IndTable::new(&Quiver::linear_a(3), FieldSpec::new(101).unwrap());
        let all = (1u64 << t.len()) - 1;
        let o = thick_oracle(&t);
        assert!(o.contains(&0));
        assert!(o.contains(&all));
    }
}

//! Finite lattice and frame utilities: distributivity, prime elements and
//! points, spatiality, Birkhoff duality with its Hochster dual, amalgams,
//! frame morphisms, and central support over a thick-subcategory lattice.
//!
//! Every lattice here is finite and bounded, so frames coincide with
//! distributive lattices and arbitrary joins degenerate to finite ones.
//! Points of a finite distributive lattice are identified with its
//! meet-prime elements; the open set of `a` collects the primes not above
//! `a`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::derived::DObject;
use crate::thick::ThickLattice;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("relation is not a partial order")]
    NotAPartialOrder,
    #[error("poset is not a lattice (missing meet or join)")]
    NotALattice,
    #[error("operation requires a distributive lattice")]
    NotDistributive,
}

/// A finite bounded lattice with explicit order and operation tables.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

impl FiniteLattice {
    /// Build from an order relation, computing meet and join tables and
    /// validating that they exist.
    pub fn from_leq(leq: Vec<Vec<bool>>) -> Result<FiniteLattice, LatticeError> {
        let n = leq.len();
        for (i, row) in leq.iter().enumerate() {
            if row.len() != n || !row[i] {
                return Err(LatticeError::NotAPartialOrder);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(LatticeError::NotAPartialOrder);
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(LatticeError::NotAPartialOrder);
                    }
                }
            }
        }
        let glb = |i: usize, j: usize| -> Option<usize> {
            let lower: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
            lower
                .iter()
                .copied()
                .find(|&m| lower.iter().all(|&k| leq[k][m]))
        };
        let lub = |i: usize, j: usize| -> Option<usize> {
            let upper: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
            upper
                .iter()
                .copied()
                .find(|&m| upper.iter().all(|&k| leq[m][k]))
        };
        let mut meet = vec![vec![0usize; n]; n];
        let mut join = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet[i][j] = glb(i, j).ok_or(LatticeError::NotALattice)?;
                join[i][j] = lub(i, j).ok_or(LatticeError::NotALattice)?;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|k| leq[b][k]))
            .ok_or(LatticeError::NotALattice)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|k| leq[k][t]))
            .ok_or(LatticeError::NotALattice)?;
        Ok(FiniteLattice { n, leq, meet, join, bottom, top })
    }

    /// View a thick-subcategory lattice through the shared interface.
    pub fn from_thick(lat: &ThickLattice) -> FiniteLattice {
        let n = lat.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| lat.leq(i, j)).collect())
            .collect();
        FiniteLattice {
            n,
            leq,
            meet: lat.meet.clone(),
            join: lat.join.clone(),
            bottom: lat.bottom(),
            top: lat.top(),
        }
    }

    /// The sublattice spanned by the given element indices (must be closed
    /// under meet and join), re-indexed by position.
    pub fn sublattice(&self, sub: &[usize]) -> FiniteLattice {
        let pos = |g: usize| -> usize {
            sub.iter().position(|&s| s == g).expect("sublattice is closed")
        };
        let k = sub.len();
        let leq: Vec<Vec<bool>> = sub
            .iter()
            .map(|&i| sub.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        let meet: Vec<Vec<usize>> = sub
            .iter()
            .map(|&i| sub.iter().map(|&j| pos(self.meet[i][j])).collect())
            .collect();
        let join: Vec<Vec<usize>> = sub
            .iter()
            .map(|&i| sub.iter().map(|&j| pos(self.join[i][j])).collect())
            .collect();
        let bottom = (0..k).find(|&b| (0..k).all(|x| leq[b][x])).expect("bounded");
        let top = (0..k).find(|&t| (0..k).all(|x| leq[x][t])).expect("bounded");
        FiniteLattice { n: k, leq, meet, join, bottom, top }
    }

    pub fn chain(n: usize) -> FiniteLattice {
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        FiniteLattice::from_leq(leq).expect("chains are lattices")
    }

    /// The lattice of down-sets of a poset, elements listed as sorted
    /// bitmasks over the poset.
    pub fn down_sets(poset: &[Vec<bool>]) -> (FiniteLattice, Vec<u64>) {
        let k = poset.len();
        assert!(k <= 20, "poset too large for down-set enumeration");
        let mut sets: Vec<u64> = Vec::new();
        'outer: for mask in 0..(1u64 << k) {
            for i in 0..k {
                if mask & (1 << i) != 0 {
                    for j in 0..k {
                        if poset[j][i] && mask & (1 << j) == 0 {
                            continue 'outer;
                        }
                    }
                }
            }
            sets.push(mask);
        }
        sets.sort();
        let leq: Vec<Vec<bool>> = sets
            .iter()
            .map(|&a| sets.iter().map(|&b| a & !b == 0).collect())
            .collect();
        (FiniteLattice::from_leq(leq).expect("down-sets form a lattice"), sets)
    }

    pub fn is_distributive(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if self.join[self.meet[x][z]][self.meet[y][z]]
                        != self.meet[self.join[x][y]][z]
                    {
                        return false;
                    }
                    if self.meet[self.join[x][z]][self.join[y][z]]
                        != self.join[self.meet[x][y]][z]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Meet-prime elements other than the top.
    pub fn meet_primes(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&p| {
                p != self.top
                    && (0..self.n).all(|x| {
                        (0..self.n).all(|y| {
                            !self.leq[self.meet[x][y]][p] || self.leq[x][p] || self.leq[y][p]
                        })
                    })
            })
            .collect()
    }

    /// Points of the frame, identified with meet-prime elements; only
    /// supported on distributive lattices.
    pub fn points(&self) -> Result<Vec<usize>, LatticeError> {
        if !self.is_distributive() {
            return Err(LatticeError::NotDistributive);
        }
        Ok(self.meet_primes())
    }

    /// The open set of `a`: points whose prime is not above `a`.
    pub fn open_set(&self, a: usize) -> BTreeSet<usize> {
        self.meet_primes()
            .into_iter()
            .filter(|&p| !self.leq[a][p])
            .collect()
    }

    /// Is `a` -> open_set(a) an isomorphism onto the open-set lattice? For a
    /// finite distributive lattice this must hold; it is checked, not
    /// assumed.
    pub fn spatial_check(&self) -> bool {
        if !self.is_distributive() {
            return false;
        }
        let opens: Vec<BTreeSet<usize>> = (0..self.n).map(|a| self.open_set(a)).collect();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && opens[a] == opens[b] {
                    return false;
                }
                let cap: BTreeSet<usize> =
                    opens[a].intersection(&opens[b]).copied().collect();
                let cup: BTreeSet<usize> = opens[a].union(&opens[b]).copied().collect();
                if opens[self.meet[a][b]] != cap || opens[self.join[a][b]] != cup {
                    return false;
                }
            }
        }
        opens[self.bottom].is_empty()
            && opens[self.top].len() == self.meet_primes().len()
    }

    /// Join-irreducible elements (not the bottom, not a join of two strictly
    /// smaller elements).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| {
                x != self.bottom
                    && (0..self.n).all(|a| {
                        (0..self.n).all(|b| self.join[a][b] != x || a == x || b == x)
                    })
            })
            .collect()
    }

    /// Birkhoff representation: the poset of join-irreducibles, verified to
    /// reconstruct the lattice as its down-set lattice.
    pub fn birkhoff(&self) -> Result<Vec<Vec<bool>>, LatticeError> {
        if !self.is_distributive() {
            return Err(LatticeError::NotDistributive);
        }
        let irr = self.join_irreducibles();
        let poset: Vec<Vec<bool>> = irr
            .iter()
            .map(|&i| irr.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        // the map a -> {irreducibles below a} must be a bijection onto the
        // down-sets, with order agreeing with inclusion
        let (_, sets) = FiniteLattice::down_sets(&poset);
        let encode = |a: usize| -> u64 {
            irr.iter()
                .enumerate()
                .fold(0u64, |m, (k, &j)| if self.leq[j][a] { m | (1 << k) } else { m })
        };
        let mut image: Vec<u64> = (0..self.n).map(encode).collect();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.leq[a][b] != (image[a] & !image[b] == 0) {
                    return Err(LatticeError::NotALattice);
                }
            }
        }
        image.sort();
        image.dedup();
        if image != sets {
            return Err(LatticeError::NotALattice);
        }
        Ok(poset)
    }

    /// The Hochster dual: the up-set lattice of the join-irreducible poset,
    /// equivalently the down-set lattice of the opposite poset.
    pub fn hochster_dual(&self) -> Result<FiniteLattice, LatticeError> {
        let poset = self.birkhoff()?;
        let k = poset.len();
        let op: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| poset[j][i]).collect())
            .collect();
        Ok(FiniteLattice::down_sets(&op).0)
    }
}

/// Order-isomorphism test for small posets, by backtracking with up/down
/// degree invariants.
pub fn posets_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let profile = |p: &[Vec<bool>], i: usize| -> (usize, usize) {
        (
            (0..p.len()).filter(|&j| p[j][i]).count(),
            (0..p.len()).filter(|&j| p[i][j]).count(),
        )
    };
    let mut pa: Vec<(usize, usize)> = (0..n).map(|i| profile(a, i)).collect();
    let mut pb: Vec<(usize, usize)> = (0..n).map(|i| profile(b, i)).collect();
    let (ka, kb) = (pa.clone(), pb.clone());
    pa.sort();
    pb.sort();
    if pa != pb {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        a: &[Vec<bool>],
        b: &[Vec<bool>],
        ka: &[(usize, usize)],
        kb: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
        i: usize,
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for t in 0..b.len() {
            if used[t] || ka[i] != kb[t] {
                continue;
            }
            let ok = (0..i).all(|j| {
                a[i][j] == b[t][map[j]] && a[j][i] == b[map[j]][t]
            });
            if ok {
                map[i] = t;
                used[t] = true;
                if rec(a, b, ka, kb, map, used, i + 1) {
                    return true;
                }
                used[t] = false;
                map[i] = usize::MAX;
            }
        }
        false
    }
    rec(a, b, &ka, &kb, &mut map, &mut used, 0)
}

/// Isomorphism of finite distributive lattices, via Birkhoff duality.
pub fn lattices_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Result<bool, LatticeError> {
    if a.n != b.n {
        return Ok(false);
    }
    Ok(posets_isomorphic(&a.birkhoff()?, &b.birkhoff()?))
}

/// Glue two bounded lattices along their bottoms and tops; cross meets fall
/// to the bottom and cross joins rise to the top.
pub fn amalgam(l1: &FiniteLattice, l2: &FiniteLattice) -> FiniteLattice {
    // element list: bottom, interior of l1, interior of l2, top
    let int1: Vec<usize> = (0..l1.n).filter(|&i| i != l1.bottom && i != l1.top).collect();
    let int2: Vec<usize> = (0..l2.n).filter(|&i| i != l2.bottom && i != l2.top).collect();
    let n = 2 + int1.len() + int2.len();
    let side = |k: usize| -> (u8, usize) {
        if k == 0 {
            (0, 0)
        } else if k <= int1.len() {
            (1, int1[k - 1])
        } else if k < n - 1 {
            (2, int2[k - 1 - int1.len()])
        } else {
            (3, 0)
        }
    };
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (si, ei) = side(i);
            let (sj, ej) = side(j);
            leq[i][j] = match (si, sj) {
                (0, _) | (_, 3) => true,
                (3, _) | (_, 0) => i == j,
                (1, 1) => l1.leq[ei][ej],
                (2, 2) => l2.leq[ei][ej],
                _ => false,
            };
        }
    }
    FiniteLattice::from_leq(leq).expect("amalgam of bounded lattices is a lattice")
}

/// Does `f` (a total map of element indices) preserve bottom, top, finite
/// meets, and finite joins?
pub fn frame_morphism_check(src: &FiniteLattice, dst: &FiniteLattice, f: &[usize]) -> bool {
    assert_eq!(f.len(), src.n);
    if f[src.bottom] != dst.bottom || f[src.top] != dst.top {
        return false;
    }
    for i in 0..src.n {
        for j in 0..src.n {
            if f[src.meet[i][j]] != dst.meet[f[i]][f[j]] {
                return false;
            }
            if f[src.join[i][j]] != dst.join[f[i]][f[j]] {
                return false;
            }
        }
    }
    true
}

/// A central sublattice of a thick-subcategory lattice, packaged with its
/// frame structure for support computations.
pub struct CentralFrame {
    /// Indices into the ambient ThickLattice.
    pub members: Vec<usize>,
    /// The lattice structure on the members, re-indexed by position.
    pub frame: FiniteLattice,
}

impl CentralFrame {
    pub fn new(lat: &ThickLattice, members: Vec<usize>) -> CentralFrame {
        let frame = FiniteLattice::from_thick(lat).sublattice(&members);
        CentralFrame { members, frame }
    }

    /// Points of the frame as positions into `members`.
    pub fn points(&self) -> Result<Vec<usize>, LatticeError> {
        self.frame.points()
    }

    /// The central support of an object: points whose prime thick
    /// subcategory does not contain it.
    pub fn central_support(&self, lat: &ThickLattice, x: &DObject) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for p in self.frame.meet_primes() {
            let bits = lat.elements[self.members[p]];
            let contained = x.items.iter().all(|&(ind, _)| bits & (1 << ind) != 0);
            if !contained {
                out.insert(p);
            }
        }
        out
    }

    /// Does U -> supp(U) identify the frame with the open-set lattice of
    /// its point space? Supports of members are computed from object
    /// membership and compared with the order-theoretic open sets.
    pub fn support_bijection_check(&self, lat: &ThickLattice) -> bool {
        if !self.frame.spatial_check() {
            return false;
        }
        for (pos, &mem) in self.members.iter().enumerate() {
            let bits = lat.elements[mem];
            let n_ind = 64 - bits.leading_zeros() as usize;
            let mut supp: BTreeSet<usize> = BTreeSet::new();
            for ind in 0..n_ind {
                if bits & (1 << ind) != 0 {
                    supp.extend(self.central_support(lat, &DObject::of_ind(ind, 0)));
                }
            }
            if supp != self.frame.open_set(pos) {
                return false;
            }
        }
        true
    }
}

/// The interval [bottom, s] of a lattice, as (element indices, lattice).
pub fn lower_interval(l: &FiniteLattice, s: usize) -> (Vec<usize>, FiniteLattice) {
    let members: Vec<usize> = (0..l.n).filter(|&i| l.leq[i][s]).collect();
    let lat = l.sublattice(&members);
    (members, lat)
}

/// The interval [s, top] of a lattice, modeling the quotient by s.
pub fn upper_interval(l: &FiniteLattice, s: usize) -> (Vec<usize>, FiniteLattice) {
    let members: Vec<usize> = (0..l.n).filter(|&i| l.leq[s][i]).collect();
    let lat = l.sublattice(&members);
    (members, lat)
}

/// Check that U -> U ∧ S is a frame morphism from a central frame into the
/// interval below S.
pub fn restriction_morphism_check(l: &FiniteLattice, z: &CentralFrame, s: usize) -> bool {
    let (members, target) = lower_interval(l, s);
    let f: Vec<usize> = z
        .members
        .iter()
        .map(|&u| {
            let m = l.meet[u][s];
            members.iter().position(|&k| k == m).expect("meet lands in interval")
        })
        .collect();
    frame_morphism_check(&z.frame, &target, &f)
}

/// Check that U -> U ∨ S is a frame morphism from a central frame into the
/// interval above S.
pub fn quotient_morphism_check(l: &FiniteLattice, z: &CentralFrame, s: usize) -> bool {
    let (members, target) = upper_interval(l, s);
    let f: Vec<usize> = z
        .members
        .iter()
        .map(|&u| {
            let j = l.join[u][s];
            members.iter().position(|&k| k == j).expect("join lands in interval")
        })
        .collect();
    frame_morphism_check(&z.frame, &target, &f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(k: usize) -> FiniteLattice {
        let poset: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| i == j).collect()).collect();
        FiniteLattice::down_sets(&poset).0
    }

    fn diamond_m3() -> FiniteLattice {
        // bottom, three incomparable atoms, top
        let mut leq = vec![vec![false; 5]; 5];
        for i in 0..5 {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][4] = true;
        }
        FiniteLattice::from_leq(leq).unwrap()
    }

    #[test]
    fn distributivity_classics() {
        assert!(!diamond_m3().is_distributive());
        assert!(FiniteLattice::chain(4).is_distributive());
        assert!(boolean(3).is_distributive());
    }

    #[test]
    fn points_and_opens() {
        let c2 = FiniteLattice::chain(2);
        assert_eq!(c2.points().unwrap().len(), 1);
        assert_eq!(boolean(2).points().unwrap().len(), 2);
        let c5 = FiniteLattice::chain(5);
        assert_eq!(c5.points().unwrap().len(), 4);
        assert_eq!(diamond_m3().points(), Err(LatticeError::NotDistributive));
        assert!(c5.spatial_check());
        assert!(boolean(3).spatial_check());
    }

    #[test]
    fn birkhoff_and_hochster() {
        let c4 = FiniteLattice::chain(4);
        let d = c4.hochster_dual().unwrap();
        assert!(lattices_isomorphic(&c4, &d).unwrap());
        let b3 = boolean(3);
        let d = b3.hochster_dual().unwrap();
        assert!(lattices_isomorphic(&b3, &d).unwrap());
        // a non-self-dual example: down-sets of the poset a < b, c
        let poset = vec![
            vec![true, true, true],
            vec![false, true, false],
            vec![false, false, true],
        ];
        let l = FiniteLattice::down_sets(&poset).0;
        let dd = l.hochster_dual().unwrap().hochster_dual().unwrap();
        assert!(lattices_isomorphic(&l, &dd).unwrap());
    }

    #[test]
    fn amalgams() {
        let c2 = FiniteLattice::chain(2);
        let c3 = FiniteLattice::chain(3);
        assert_eq!(amalgam(&c2, &c2).n, 2);
        let m2 = amalgam(&c3, &c3);
        assert_eq!(m2.n, 4);
        assert!(!posets_isomorphic(&m2.leq, &FiniteLattice::chain(4).leq));
        // three 3-chains glued: bottom, three incomparable atoms, top
        let a2_shape = amalgam(&amalgam(&c3, &c3), &c3);
        assert_eq!(a2_shape.n, 5);
        assert!(posets_isomorphic(&a2_shape.leq, &diamond_m3().leq));
    }

    #[test]
    fn frame_morphisms() {
        let c3 = FiniteLattice::chain(3);
        let id: Vec<usize> = (0..3).collect();
        assert!(frame_morphism_check(&c3, &c3, &id));
        // collapsing the middle upward keeps joins but breaks nothing here
        let up = vec![0, 2, 2];
        assert!(frame_morphism_check(&c3, &c3, &up));
        // sending top below bottom's image is not a frame morphism
        let bad = vec![0, 0, 0];
        assert!(!frame_morphism_check(&c3, &c3, &bad));
    }
}

//! Quiver representations over a prime field: morphisms, Hom and Ext^1
//! spaces, kernels, cokernels, projectives and the standard resolution.
//!
//! For a representation M of a path algebra there is the standard exact
//! sequence
//!
//! ```text
//! 0 -> ⊕_{a: v->w} P_w ⊗ M_v -> ⊕_v P_v ⊗ M_v -> M -> 0
//! ```
//!
//! Applying Hom(-, N) identifies both Hom(M, N) and Ext^1(M, N) with the
//! kernel and cokernel of a single matrix D : ⊕_v Hom(M_v, N_v) ->
//! ⊕_a Hom(M_{s(a)}, N_{t(a)}), with D(φ) = (N_a φ_{s(a)} - φ_{t(a)} M_a).
//! That matrix drives everything in this module.

use crate::field::{FieldSpec, Mat};
use crate::quiver::Quiver;

/// A finite-dimensional representation: one vector space dimension per
/// vertex, one matrix per arrow (shape target × source).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

impl Rep {
    pub fn zero(q: &Quiver, field: FieldSpec) -> Rep {
        let dims = vec![0; q.num_vertices()];
        let mats = q.arrows().iter().map(|_| Mat::zeros(field, 0, 0)).collect();
        Rep { field, dims, mats }
    }

    pub fn new(q: &Quiver, field: FieldSpec, dims: Vec<usize>, mats: Vec<Mat>) -> Rep {
        assert_eq!(dims.len(), q.num_vertices());
        assert_eq!(mats.len(), q.arrows().len());
        for (i, &(s, t)) in q.arrows().iter().enumerate() {
            assert_eq!(mats[i].rows, dims[t], "arrow {i} matrix rows");
            assert_eq!(mats[i].cols, dims[s], "arrow {i} matrix cols");
        }
        Rep { field, dims, mats }
    }

    /// Simple module at a vertex.
    pub fn simple(q: &Quiver, field: FieldSpec, v: usize) -> Rep {
        let mut dims = vec![0; q.num_vertices()];
        dims[v] = 1;
        let mats = q
            .arrows()
            .iter()
            .map(|&(s, t)| Mat::zeros(field, dims[t], dims[s]))
            .collect();
        Rep { field, dims, mats }
    }

    /// The representation with k at every vertex and identity arrows; the
    /// unit for the pointwise tensor product.
    pub fn unit(q: &Quiver, field: FieldSpec) -> Rep {
        let dims = vec![1; q.num_vertices()];
        let mats = q.arrows().iter().map(|_| Mat::identity(field, 1)).collect();
        Rep { field, dims, mats }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of the action along a directed path (list of arrow indices,
    /// first arrow first).
    pub fn path_action(&self, q: &Quiver, path: &[usize]) -> Mat {
        let start = if let Some(&a0) = path.first() {
            q.arrows()[a0].0
        } else {
            // identity on an unspecified vertex is ambiguous; callers pass
            // nonempty paths or handle the trivial case themselves
            return Mat::identity(self.field, 0);
        };
        let mut acc = Mat::identity(self.field, self.dims[start]);
        for &a in path {
            acc = self.mats[a].mul(&acc);
        }
        acc
    }
}

/// Pointwise tensor product of representations.
pub fn tensor(q: &Quiver, m: &Rep, n: &Rep) -> Rep {
    let field = m.field;
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| m.dims[v] * n.dims[v]).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(s, t))| {
            let mut k = Mat::zeros(field, dims[t], dims[s]);
            for i1 in 0..m.dims[t] {
                for j1 in 0..m.dims[s] {
                    let a = m.mats[ai].get(i1, j1);
                    if a == 0 {
                        continue;
                    }
                    for i2 in 0..n.dims[t] {
                        for j2 in 0..n.dims[s] {
                            let b = n.mats[ai].get(i2, j2);
                            k.set(
                                i1 * n.dims[t] + i2,
                                j1 * n.dims[s] + j2,
                                field.mul(a, b),
                            );
                        }
                    }
                }
            }
            k
        })
        .collect();
    Rep { field, dims, mats }
}

/// A morphism of representations: one matrix per vertex, commuting with the
/// arrow actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMap {
    pub source: Rep,
    pub target: Rep,
    pub comps: Vec<Mat>,
}

impl RepMap {
    pub fn new(q: &Quiver, source: Rep, target: Rep, comps: Vec<Mat>) -> RepMap {
        let map = RepMap { source, target, comps };
        debug_assert!(map.is_valid(q), "components do not intertwine");
        map
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        for (ai, &(s, t)) in q.arrows().iter().enumerate() {
            let lhs = self.comps[t].mul(&self.source.mats[ai]);
            let rhs = self.target.mats[ai].mul(&self.comps[s]);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn identity(q: &Quiver, m: &Rep) -> RepMap {
        let comps = m.dims.iter().map(|&d| Mat::identity(m.field, d)).collect();
        let _ = q;
        RepMap { source: m.clone(), target: m.clone(), comps }
    }

    pub fn zero(m: &Rep, n: &Rep) -> RepMap {
        let comps = m
            .dims
            .iter()
            .zip(&n.dims)
            .map(|(&ms, &ns)| Mat::zeros(m.field, ns, ms))
            .collect();
        RepMap { source: m.clone(), target: n.clone(), comps }
    }

    pub fn compose(&self, first: &RepMap) -> RepMap {
        // self ∘ first
        assert_eq!(first.target.dims, self.source.dims);
        let comps = self
            .comps
            .iter()
            .zip(&first.comps)
            .map(|(g, f)| g.mul(f))
            .collect();
        RepMap { source: first.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &RepMap) -> RepMap {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        RepMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, c: u64) -> RepMap {
        let comps = self.comps.iter().map(|m| m.scale(c)).collect();
        RepMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn neg(&self) -> RepMap {
        let comps = self.comps.iter().map(|m| m.neg()).collect();
        RepMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps
            .iter()
            .all(|m| m.rows == m.cols && m.rank() == m.rows)
    }

    /// Vertexwise inverse; panics if the map is not an isomorphism.
    pub fn inverse(&self) -> RepMap {
        let comps = self
            .comps
            .iter()
            .map(|m| {
                m.solve(&Mat::identity(m.field, m.rows))
                    .expect("component is invertible")
            })
            .collect();
        RepMap { source: self.target.clone(), target: self.source.clone(), comps }
    }

    /// Flatten to a coordinate vector (row-major per vertex, vertices in
    /// order). Inverse of [`RepMap::from_vector`].
    pub fn to_vector(&self) -> Vec<u64> {
        let mut v = Vec::new();
        for c in &self.comps {
            for i in 0..c.rows {
                for j in 0..c.cols {
                    v.push(c.get(i, j));
                }
            }
        }
        v
    }

    pub fn from_vector(m: &Rep, n: &Rep, v: &[u64]) -> RepMap {
        let mut comps = Vec::new();
        let mut k = 0;
        for (ms, ns) in m.dims.iter().zip(&n.dims) {
            let mut mat = Mat::zeros(m.field, *ns, *ms);
            for i in 0..*ns {
                for j in 0..*ms {
                    mat.set(i, j, v[k]);
                    k += 1;
                }
            }
            comps.push(mat);
        }
        assert_eq!(k, v.len());
        RepMap { source: m.clone(), target: n.clone(), comps }
    }
}

pub fn map_vector_len(m: &Rep, n: &Rep) -> usize {
    m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum()
}

/// The intertwiner matrix D : ⊕_v Hom(M_v, N_v) -> ⊕_a Hom(M_{s(a)}, N_{t(a)}).
/// Hom(M, N) = ker D and Ext^1(M, N) = coker D.
pub fn intertwiner_matrix(q: &Quiver, m: &Rep, n: &Rep) -> Mat {
    let field = m.field;
    let dom = map_vector_len(m, n);
    let cod = cocycle_len(q, m, n);
    let mut d = Mat::zeros(field, cod, dom);
    for col in 0..dom {
        let mut unit = vec![0u64; dom];
        unit[col] = 1;
        let phi = RepMap::from_vector(m, n, &unit);
        let mut row = 0;
        for (ai, &(s, t)) in q.arrows().iter().enumerate() {
            let block = n.mats[ai].mul(&phi.comps[s]).sub(&phi.comps[t].mul(&m.mats[ai]));
            for i in 0..block.rows {
                for j in 0..block.cols {
                    d.set(row, col, block.get(i, j));
                    row += 1;
                }
            }
        }
        assert_eq!(row, cod);
    }
    d
}

/// Length of the cocycle coordinate space ⊕_a Hom(M_{s(a)}, N_{t(a)}).
pub fn cocycle_len(q: &Quiver, m: &Rep, n: &Rep) -> usize {
    q.arrows()
        .iter()
        .map(|&(s, t)| m.dims[s] * n.dims[t])
        .sum()
}

/// Split a cocycle coordinate vector into one matrix per arrow.
pub fn cocycle_components(q: &Quiver, m: &Rep, n: &Rep, z: &[u64]) -> Vec<Mat> {
    let mut out = Vec::new();
    let mut k = 0;
    for &(s, t) in q.arrows() {
        let mut mat = Mat::zeros(m.field, n.dims[t], m.dims[s]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                mat.set(i, j, z[k]);
                k += 1;
            }
        }
        out.push(mat);
    }
    assert_eq!(k, z.len());
    out
}

/// Basis of Hom(M, N), in deterministic order.
pub fn hom_space(q: &Quiver, m: &Rep, n: &Rep) -> Vec<RepMap> {
    let dom = map_vector_len(m, n);
    if dom == 0 {
        return Vec::new();
    }
    if cocycle_len(q, m, n) == 0 {
        // no constraints
        return (0..dom)
            .map(|i| {
                let mut v = vec![0u64; dom];
                v[i] = 1;
                RepMap::from_vector(m, n, &v)
            })
            .collect();
    }
    let d = intertwiner_matrix(q, m, n);
    let k = d.kernel_basis();
    (0..k.cols)
        .map(|j| RepMap::from_vector(m, n, &k.col(j)))
        .collect()
}

pub fn hom_dim(q: &Quiver, m: &Rep, n: &Rep) -> usize {
    if map_vector_len(m, n) == 0 {
        return 0;
    }
    map_vector_len(m, n) - intertwiner_matrix(q, m, n).rank()
}

/// Ext^1(M, N) in the presentation-cokernel model: cocycle vectors modulo
/// the image of the intertwiner matrix.
#[derive(Debug, Clone)]
pub struct ExtSpace {
    pub dim: usize,
    pub cocycle_len: usize,
    /// Chosen coset representatives, one column per basis class.
    reps: Mat,
    /// `[image basis | representatives]`, used for coordinate extraction.
    combined: Mat,
}

impl ExtSpace {
    pub fn compute(q: &Quiver, m: &Rep, n: &Rep) -> ExtSpace {
        let field = m.field;
        let clen = cocycle_len(q, m, n);
        if clen == 0 {
            return ExtSpace {
                dim: 0,
                cocycle_len: 0,
                reps: Mat::zeros(field, 0, 0),
                combined: Mat::zeros(field, 0, 0),
            };
        }
        let d = intertwiner_matrix(q, m, n);
        let im = d.column_space();
        // extend the image basis by unit vectors to get coset representatives
        let mut combined = im.clone();
        let mut reps = Mat::zeros(field, clen, 0);
        let mut rank = combined.rank();
        for i in 0..clen {
            if rank == clen {
                break;
            }
            let mut unit = Mat::zeros(field, clen, 1);
            unit.set(i, 0, 1);
            let cand = combined.hstack(&unit);
            let r = cand.rank();
            if r > rank {
                combined = cand;
                reps = reps.hstack(&unit);
                rank = r;
            }
        }
        ExtSpace { dim: reps.cols, cocycle_len: clen, reps, combined }
    }

    /// Coordinates of a cocycle class in the chosen basis.
    pub fn coords(&self, z: &[u64]) -> Vec<u64> {
        if self.cocycle_len == 0 {
            return Vec::new();
        }
        let field = self.combined.field;
        let zcol = Mat::column(field, z);
        let x = self
            .combined
            .solve(&zcol)
            .expect("cocycle must lie in the span of image + representatives");
        let off = self.combined.cols - self.dim;
        (0..self.dim).map(|i| x.get(off + i, 0)).collect()
    }

    /// Cocycle vector of the i-th basis class.
    pub fn basis_cocycle(&self, i: usize) -> Vec<u64> {
        self.reps.col(i)
    }
}

pub fn ext_dim(q: &Quiver, m: &Rep, n: &Rep) -> usize {
    ExtSpace::compute(q, m, n).dim
}

/// Middle term of the extension 0 -> N -> E -> M -> 0 classified by a
/// cocycle: E_v = N_v ⊕ M_v with arrows [[N_a, c_a], [0, M_a]].
pub fn extension_middle(q: &Quiver, m: &Rep, n: &Rep, cocycle: &[u64]) -> Rep {
    let field = m.field;
    let c = cocycle_components(q, m, n, cocycle);
    let dims: Vec<usize> = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(s, t))| {
            let mut mat = Mat::zeros(field, dims[t], dims[s]);
            for i in 0..n.dims[t] {
                for j in 0..n.dims[s] {
                    mat.set(i, j, n.mats[ai].get(i, j));
                }
                for j in 0..m.dims[s] {
                    mat.set(i, n.dims[s] + j, c[ai].get(i, j));
                }
            }
            for i in 0..m.dims[t] {
                for j in 0..m.dims[s] {
                    mat.set(n.dims[t] + i, n.dims[s] + j, m.mats[ai].get(i, j));
                }
            }
            mat
        })
        .collect();
    Rep { field, dims, mats }
}

/// Kernel of a morphism, with its inclusion.
pub fn kernel(q: &Quiver, f: &RepMap) -> (Rep, RepMap) {
    let field = f.source.field;
    let bases: Vec<Mat> = f.comps.iter().map(|c| c.kernel_basis()).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(s, t))| {
            let img = f.source.mats[ai].mul(&bases[s]);
            bases[t]
                .solve(&img)
                .expect("arrow action preserves the kernel")
        })
        .collect();
    let ker = Rep { field, dims, mats };
    let incl = RepMap { source: ker.clone(), target: f.source.clone(), comps: bases };
    (ker, incl)
}

/// Image of a morphism, with its inclusion into the target.
pub fn image(q: &Quiver, f: &RepMap) -> (Rep, RepMap) {
    let field = f.source.field;
    let bases: Vec<Mat> = f.comps.iter().map(|c| c.column_space()).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(s, t))| {
            let img = f.target.mats[ai].mul(&bases[s]);
            bases[t]
                .solve(&img)
                .expect("arrow action preserves the image")
        })
        .collect();
    let im = Rep { field, dims, mats };
    let incl = RepMap { source: im.clone(), target: f.target.clone(), comps: bases };
    (im, incl)
}

/// Cokernel of a morphism, with its projection.
pub fn cokernel(q: &Quiver, f: &RepMap) -> (Rep, RepMap) {
    let field = f.source.field;
    let n = &f.target;
    // per vertex: image basis C, complement of unit vectors E, projection =
    // bottom rows of [C|E]^{-1}
    let mut projs = Vec::new();
    let mut secs = Vec::new();
    let mut dims = Vec::new();
    for (v, c) in f.comps.iter().enumerate() {
        let im = c.column_space();
        let amb = n.dims[v];
        let mut full = im.clone();
        let mut sec = Mat::zeros(field, amb, 0);
        let mut rank = full.rank();
        for i in 0..amb {
            if rank == amb {
                break;
            }
            let mut unit = Mat::zeros(field, amb, 1);
            unit.set(i, 0, 1);
            let cand = full.hstack(&unit);
            if cand.rank() > rank {
                full = cand;
                sec = sec.hstack(&unit);
                rank += 1;
            }
        }
        let codim = amb - im.cols;
        let inv = full
            .solve(&Mat::identity(field, amb))
            .expect("[C|E] is invertible");
        // bottom `codim` rows of the inverse
        let mut proj = Mat::zeros(field, codim, amb);
        for i in 0..codim {
            for j in 0..amb {
                proj.set(i, j, inv.get(im.cols + i, j));
            }
        }
        projs.push(proj);
        secs.push(sec);
        dims.push(codim);
    }
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(s, t))| projs[t].mul(&n.mats[ai]).mul(&secs[s]))
        .collect();
    let coker = Rep { field, dims, mats };
    let proj = RepMap { source: n.clone(), target: coker.clone(), comps: projs };
    (coker, proj)
}

/// Find h with `through ∘ h = g`, solving in the basis of Hom(source(g),
/// source(through)). Returns `None` when no factorization exists.
pub fn solve_factor_left(q: &Quiver, through: &RepMap, g: &RepMap) -> Option<RepMap> {
    // h : A -> B, through : B -> C, g : A -> C
    let a = &g.source;
    let b = &through.source;
    let basis = hom_space(q, a, b);
    let veclen = map_vector_len(a, &through.target);
    let field = a.field;
    let mut cols = Mat::zeros(field, veclen, basis.len());
    for (j, h) in basis.iter().enumerate() {
        let v = through.compose(h).to_vector();
        for (i, &x) in v.iter().enumerate() {
            cols.set(i, j, x);
        }
    }
    let target = Mat::column(field, &g.to_vector());
    let x = cols.solve(&target)?;
    let mut acc = RepMap::zero(a, b);
    for (j, h) in basis.iter().enumerate() {
        acc = acc.add(&h.scale(x.get(j, 0)));
    }
    Some(acc)
}

/// Find h with `h ∘ through = g` (factorization on the other side).
pub fn solve_factor_right(q: &Quiver, through: &RepMap, g: &RepMap) -> Option<RepMap> {
    // h : B -> C, through : A -> B, g : A -> C
    let b = &through.target;
    let c = &g.target;
    let basis = hom_space(q, b, c);
    let veclen = map_vector_len(&through.source, c);
    let field = b.field;
    let mut cols = Mat::zeros(field, veclen, basis.len());
    for (j, h) in basis.iter().enumerate() {
        let v = h.compose(through).to_vector();
        for (i, &x) in v.iter().enumerate() {
            cols.set(i, j, x);
        }
    }
    let target = Mat::column(field, &g.to_vector());
    let x = cols.solve(&target)?;
    let mut acc = RepMap::zero(b, c);
    for (j, h) in basis.iter().enumerate() {
        acc = acc.add(&h.scale(x.get(j, 0)));
    }
    Some(acc)
}

/// Direct sum with block bookkeeping.
pub struct DirectSum {
    pub rep: Rep,
    offsets: Vec<Vec<usize>>, // per part, per vertex
    parts: Vec<Rep>,
}

impl DirectSum {
    pub fn new(q: &Quiver, field: FieldSpec, parts: &[&Rep]) -> DirectSum {
        let nv = q.num_vertices();
        let mut dims = vec![0usize; nv];
        let mut offsets = Vec::new();
        for p in parts {
            offsets.push(dims.clone());
            for v in 0..nv {
                dims[v] += p.dims[v];
            }
        }
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, &(s, t))| {
                let mut m = Mat::zeros(field, dims[t], dims[s]);
                for (pi, p) in parts.iter().enumerate() {
                    for i in 0..p.dims[t] {
                        for j in 0..p.dims[s] {
                            m.set(
                                offsets[pi][t] + i,
                                offsets[pi][s] + j,
                                p.mats[ai].get(i, j),
                            );
                        }
                    }
                }
                m
            })
            .collect();
        DirectSum {
            rep: Rep { field, dims, mats },
            offsets,
            parts: parts.iter().map(|p| (*p).clone()).collect(),
        }
    }

    pub fn injection(&self, i: usize) -> RepMap {
        let p = &self.parts[i];
        let field = p.field;
        let comps = (0..p.dims.len())
            .map(|v| {
                let mut m = Mat::zeros(field, self.rep.dims[v], p.dims[v]);
                for j in 0..p.dims[v] {
                    m.set(self.offsets[i][v] + j, j, 1);
                }
                m
            })
            .collect();
        RepMap { source: p.clone(), target: self.rep.clone(), comps }
    }

    pub fn projection(&self, i: usize) -> RepMap {
        let p = &self.parts[i];
        let field = p.field;
        let comps = (0..p.dims.len())
            .map(|v| {
                let mut m = Mat::zeros(field, p.dims[v], self.rep.dims[v]);
                for j in 0..p.dims[v] {
                    m.set(j, self.offsets[i][v] + j, 1);
                }
                m
            })
            .collect();
        RepMap { source: self.rep.clone(), target: p.clone(), comps }
    }
}

/// The indecomposable projective at a vertex, with its path basis.
#[derive(Debug, Clone)]
pub struct Projective {
    pub vertex: usize,
    pub rep: Rep,
    /// Per vertex, the list of paths (arrow-index sequences) forming the basis.
    pub path_basis: Vec<Vec<Vec<usize>>>,
}

pub fn projective(q: &Quiver, field: FieldSpec, v: usize) -> Projective {
    let nv = q.num_vertices();
    let path_basis: Vec<Vec<Vec<usize>>> = (0..nv).map(|w| q.paths(v, w)).collect();
    let dims: Vec<usize> = path_basis.iter().map(|b| b.len()).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(s, t))| {
            let mut m = Mat::zeros(field, dims[t], dims[s]);
            for (j, p) in path_basis[s].iter().enumerate() {
                let mut ext = p.clone();
                ext.push(ai);
                if let Some(i) = path_basis[t].iter().position(|x| x == &ext) {
                    m.set(i, j, 1);
                }
            }
            m
        })
        .collect();
    Projective { vertex: v, rep: Rep { field, dims, mats }, path_basis }
}

/// The morphism P_v -> N classified by an element of N_v (Yoneda): the path
/// basis element p goes to N_p applied to the element.
pub fn map_from_projective(q: &Quiver, proj: &Projective, n: &Rep, elem: &[u64]) -> RepMap {
    let field = n.field;
    let comps = (0..q.num_vertices())
        .map(|w| {
            let mut m = Mat::zeros(field, n.dims[w], proj.rep.dims[w]);
            for (j, path) in proj.path_basis[w].iter().enumerate() {
                let col = if path.is_empty() {
                    Mat::column(field, elem)
                } else {
                    n.path_action(q, path).mul(&Mat::column(field, elem))
                };
                for i in 0..n.dims[w] {
                    m.set(i, j, col.get(i, 0));
                }
            }
            m
        })
        .collect();
    RepMap { source: proj.rep.clone(), target: n.clone(), comps }
}

/// The standard projective resolution 0 -> P1 -> P0 -> M -> 0.
pub struct Resolution {
    pub p1: Rep,
    pub p0: Rep,
    pub d: RepMap,
    pub eps: RepMap,
    /// (arrow index, copy index) per P1 summand, in order.
    p1_index: Vec<(usize, usize)>,
    p1_sum: DirectSum,
}

pub fn standard_resolution(q: &Quiver, m: &Rep) -> Resolution {
    let field = m.field;
    let nv = q.num_vertices();
    let projectives: Vec<Projective> = (0..nv).map(|v| projective(q, field, v)).collect();

    // P0 = ⊕_v P_v^{dim M_v}
    let mut p0_parts: Vec<&Rep> = Vec::new();
    let mut p0_index = Vec::new();
    for v in 0..nv {
        for j in 0..m.dims[v] {
            p0_parts.push(&projectives[v].rep);
            p0_index.push((v, j));
        }
    }
    let p0_sum = DirectSum::new(q, field, &p0_parts);

    // eps : P0 -> M, on the (v, j) summand the Yoneda map for e_j in M_v
    let mut eps = RepMap::zero(&p0_sum.rep, m);
    for (k, &(v, j)) in p0_index.iter().enumerate() {
        let mut e = vec![0u64; m.dims[v]];
        e[j] = 1;
        let comp = map_from_projective(q, &projectives[v], m, &e);
        eps = eps.add(&comp.compose(&p0_sum.projection(k)));
    }

    // P1 = ⊕_{a: v->w} P_w^{dim M_v}
    let mut p1_parts: Vec<&Rep> = Vec::new();
    let mut p1_index = Vec::new();
    for (ai, &(_, w)) in q.arrows().iter().enumerate() {
        let v = q.arrows()[ai].0;
        for j in 0..m.dims[v] {
            let _ = w;
            p1_parts.push(&projectives[q.arrows()[ai].1].rep);
            p1_index.push((ai, j));
        }
    }
    let p1_sum = DirectSum::new(q, field, &p1_parts);

    // d : P1 -> P0, on the (a: v->w, j) summand:
    //   p ⊗ e_j  |->  p ⊗ M_a(e_j)  -  (p·a) ⊗ e_j
    let mut d = RepMap::zero(&p1_sum.rep, &p0_sum.rep);
    for (k, &(ai, j)) in p1_index.iter().enumerate() {
        let (v, w) = q.arrows()[ai];
        // first part: into the P_w copies, weighted by M_a e_j
        for i in 0..m.dims[w] {
            let c = m.mats[ai].get(i, j);
            if c == 0 {
                continue;
            }
            let slot = p0_index.iter().position(|&(vv, jj)| vv == w && jj == i).unwrap();
            let part = p0_sum.injection(slot).scale(c);
            d = d.add(&part.compose(&p1_sum.projection(k)));
        }
        // second part: minus (p·a) into the P_v copy j
        let slot = p0_index.iter().position(|&(vv, jj)| vv == v && jj == j).unwrap();
        let glue = path_extension_map(q, &projectives[w], &projectives[v], ai);
        let part = p0_sum.injection(slot).compose(&glue).neg();
        d = d.add(&part.compose(&p1_sum.projection(k)));
    }

    Resolution { p1: p1_sum.rep.clone(), p0: p0_sum.rep.clone(), d, eps, p1_index, p1_sum }
}

/// The map P_w -> P_v sending the path p (from w) to p·a, for an arrow
/// a : v -> w.
fn path_extension_map(q: &Quiver, pw: &Projective, pv: &Projective, ai: usize) -> RepMap {
    let field = pw.rep.field;
    let comps = (0..q.num_vertices())
        .map(|x| {
            let mut m = Mat::zeros(field, pv.rep.dims[x], pw.rep.dims[x]);
            for (j, p) in pw.path_basis[x].iter().enumerate() {
                let mut ext = vec![ai];
                ext.extend_from_slice(p);
                if let Some(i) = pv.path_basis[x].iter().position(|y| y == &ext) {
                    m.set(i, j, 1);
                }
            }
            m
        })
        .collect();
    RepMap { source: pw.rep.clone(), target: pv.rep.clone(), comps }
}

impl Resolution {
    /// Turn an Ext^1 cocycle for (M, N) into the classified map P1 -> N.
    pub fn cocycle_to_map(&self, q: &Quiver, m: &Rep, n: &Rep, z: &[u64]) -> RepMap {
        let comps = cocycle_components(q, m, n, z);
        let field = n.field;
        let nv = q.num_vertices();
        let projectives: Vec<Projective> = (0..nv).map(|v| projective(q, field, v)).collect();
        let mut out = RepMap::zero(&self.p1, n);
        for (k, &(ai, j)) in self.p1_index.iter().enumerate() {
            let (_, w) = q.arrows()[ai];
            // the element c_a(e_j) of N_w
            let elem: Vec<u64> = (0..n.dims[w]).map(|i| comps[ai].get(i, j)).collect();
            if elem.iter().all(|&x| x == 0) {
                continue;
            }
            let part = map_from_projective(q, &projectives[w], n, &elem);
            out = out.add(&part.compose(&self.p1_sum.projection(k)));
        }
        out
    }

    /// Recover the Ext^1 cocycle vector from a map P1 -> N.
    pub fn map_to_cocycle(&self, q: &Quiver, m: &Rep, n: &Rep, g: &RepMap) -> Vec<u64> {
        let mut comps: Vec<Mat> = q
            .arrows()
            .iter()
            .map(|&(s, t)| Mat::zeros(n.field, n.dims[t], m.dims[s]))
            .collect();
        for (k, &(ai, j)) in self.p1_index.iter().enumerate() {
            let (_, w) = q.arrows()[ai];
            // evaluate on the trivial-path generator of the k-th summand P_w
            let inj = self.p1_sum.injection(k);
            let projw = projective(q, n.field, w);
            let gen_pos = projw.path_basis[w]
                .iter()
                .position(|p| p.is_empty())
                .expect("trivial path exists");
            let mut e = Mat::zeros(n.field, inj.source.dims[w], 1);
            e.set(gen_pos, 0, 1);
            let val = g.comps[w].mul(&inj.comps[w]).mul(&e);
            for i in 0..n.dims[w] {
                comps[ai].set(i, j, val.get(i, 0));
            }
        }
        let mut z = Vec::new();
        for c in &comps {
            for i in 0..c.rows {
                for j in 0..c.cols {
                    z.push(c.get(i, j));
                }
            }
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn a2() -> Quiver {
        Quiver::linear_a(2)
    }

    fn a2_modules(f: FieldSpec) -> (Rep, Rep, Rep) {
        let q = a2();
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        let p = Rep::unit(&q, f);
        (s1, s2, p)
    }

    #[test]
    fn hom_dims_a2() {
        for p in [2u64, 101] {
            let f = field(p);
            let q = a2();
            let (s1, s2, proj) = a2_modules(f);
            assert_eq!(hom_dim(&q, &s1, &s2), 0);
            assert_eq!(hom_dim(&q, &s2, &s1), 0);
            assert_eq!(hom_dim(&q, &s1, &s1), 1);
            assert_eq!(hom_dim(&q, &s2, &proj), 1);
            assert_eq!(hom_dim(&q, &proj, &s1), 1);
            assert_eq!(hom_dim(&q, &proj, &s2), 0);
            assert_eq!(hom_dim(&q, &s1, &proj), 0);
        }
    }

    #[test]
    fn ext_dims_a2() {
        for p in [2u64, 101] {
            let f = field(p);
            let q = a2();
            let (s1, s2, proj) = a2_modules(f);
            assert_eq!(ext_dim(&q, &s1, &s2), 1);
            assert_eq!(ext_dim(&q, &s2, &s1), 0);
            assert_eq!(ext_dim(&q, &proj, &s1), 0);
            assert_eq!(ext_dim(&q, &proj, &s2), 0);
            assert_eq!(ext_dim(&q, &s1, &s1), 0);
        }
    }

    #[test]
    fn euler_form() {
        // rank-nullity of the intertwiner matrix gives the Euler form
        let f = field(101);
        let q = Quiver::linear_a(3);
        let m = Rep::new(
            &q,
            f,
            vec![1, 2, 1],
            vec![
                Mat::from_rows(f, &[vec![1], vec![0]]),
                Mat::from_rows(f, &[vec![1, 1]]),
            ],
        );
        let n = Rep::unit(&q, f);
        let lhs = hom_dim(&q, &m, &n) as i64 - ext_dim(&q, &m, &n) as i64;
        let mut rhs = 0i64;
        for v in 0..3 {
            rhs += (m.dims[v] * n.dims[v]) as i64;
        }
        for &(s, t) in q.arrows() {
            rhs -= (m.dims[s] * n.dims[t]) as i64;
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_cokernel_basics() {
        let f = field(101);
        let q = a2();
        let (s1, s2, proj) = a2_modules(f);
        let id = RepMap::identity(&q, &proj);
        let (k, _) = kernel(&q, &id);
        assert!(k.is_zero());
        let z = RepMap::zero(&s2, &proj);
        let (k, _) = kernel(&q, &z);
        assert_eq!(k.dims, s2.dims);
        // S2 -> P inclusion has cokernel S1
        let incl = &hom_space(&q, &s2, &proj)[0];
        let (c, projmap) = cokernel(&q, incl);
        assert_eq!(c.dims, s1.dims);
        assert!(projmap.compose(incl).is_zero());
    }

    #[test]
    fn exactness_dimension_count() {
        let f = field(2);
        let q = a2();
        let (_, s2, proj) = a2_modules(f);
        let incl = &hom_space(&q, &s2, &proj)[0];
        let (k, _) = kernel(&q, incl);
        let (c, _) = cokernel(&q, incl);
        for v in 0..2 {
            let lhs = k.dims[v] as i64 - s2.dims[v] as i64 + proj.dims[v] as i64 - c.dims[v] as i64;
            assert_eq!(lhs, 0);
        }
    }

    #[test]
    fn standard_resolution_is_exact() {
        let f = field(101);
        let q = Quiver::linear_a(3);
        let m = Rep::new(
            &q,
            f,
            vec![1, 1, 1],
            vec![Mat::identity(f, 1), Mat::zeros(f, 1, 1)],
        );
        let res = standard_resolution(&q, &m);
        assert!(res.d.is_valid(&q));
        assert!(res.eps.is_valid(&q));
        // eps ∘ d = 0
        assert!(res.eps.compose(&res.d).is_zero());
        // d injective, eps surjective, dims balance
        let (kd, _) = kernel(&q, &res.d);
        assert!(kd.is_zero());
        let (ce, _) = cokernel(&q, &res.eps);
        assert!(ce.is_zero());
        for v in 0..3 {
            assert_eq!(
                res.p1.dims[v] as i64 - res.p0.dims[v] as i64 + m.dims[v] as i64,
                0
            );
        }
    }

    #[test]
    fn extension_middle_term_a2() {
        let f = field(101);
        let q = a2();
        let (s1, s2, _) = a2_modules(f);
        let ext = ExtSpace::compute(&q, &s1, &s2);
        assert_eq!(ext.dim, 1);
        let e = extension_middle(&q, &s1, &s2, &ext.basis_cocycle(0));
        // middle term is P: dims (1,1) with a nonzero arrow
        assert_eq!(e.dims, vec![1, 1]);
        assert!(!e.mats[0].is_zero());
    }

    #[test]
    fn cocycle_map_roundtrip() {
        let f = field(101);
        let q = a2();
        let (s1, s2, _) = a2_modules(f);
        let res = standard_resolution(&q, &s1);
        let ext = ExtSpace::compute(&q, &s1, &s2);
        let z = ext.basis_cocycle(0);
        let g = res.cocycle_to_map(&q, &s1, &s2, &z);
        assert!(g.is_valid(&q));
        let z2 = res.map_to_cocycle(&q, &s1, &s2, &g);
        assert_eq!(z, z2);
    }

    #[test]
    fn tensor_a2() {
        let f = field(101);
        let q = a2();
        let (s1, s2, proj) = a2_modules(f);
        let t = tensor(&q, &s1, &s2);
        assert!(t.is_zero());
        let pp = tensor(&q, &proj, &proj);
        assert_eq!(pp.dims, vec![1, 1]);
        assert!(!pp.mats[0].is_zero());
    }

    #[test]
    fn factor_solving() {
        let f = field(101);
        let q = a2();
        let (s1, _, proj) = a2_modules(f);
        // P -> S1 is surjective; identity of S1 factors through it on the right
        let surj = &hom_space(&q, &proj, &s1)[0];
        let id = RepMap::identity(&q, &s1);
        // no section S1 -> P exists
        assert!(solve_factor_left(&q, surj, &id).is_none());
        // but P -> S1 factors through itself
        assert!(solve_factor_right(&q, surj, surj).is_some());
    }
}

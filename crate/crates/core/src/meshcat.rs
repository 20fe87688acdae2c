//! Finite windows of the mesh category of `Z Delta~`.
//!
//! Hom spaces are computed one source at a time. Walking the window in
//! topological order, `Hom(x, y)` for `y != x` is the cokernel of
//!
//! ```text
//!   Hom(x, tau y) --(compose with tau y -> z)--> (+)_{z -> y} Hom(x, z)
//! ```
//!
//! and the cokernel projection gives the matrices of composing with each
//! arrow `z -> y`. Every arrow decreases or keeps the tau-power, so a path
//! from `x` to `y` only visits rows between `y.m` and `x.m`; a window that
//! contains both endpoints contains every path between them.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::arq::BundlePoint;
use crate::error::{Error, Result};
use crate::lgroup::Weight;
use crate::linalg::QMatrix;
use crate::wpl::Wpl;

/// The mesh relation ending at `vertex`: the sum over `middle` of
/// `(z -> vertex) o (tau vertex -> z)` vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshRelation {
    pub vertex: BundlePoint,
    pub start: BundlePoint,
    pub middle: Vec<BundlePoint>,
}

#[derive(Debug)]
struct HomFrom {
    dims: Vec<usize>,
    // (z, y) -> matrix of composing with the arrow z -> y, shape dim y x dim z
    arrows: HashMap<(usize, usize), QMatrix>,
}

/// All points with tau-power in `tau_min..=tau_max` and the arrows among them.
#[derive(Debug)]
pub struct MeshWindow {
    weight: Weight,
    tau_min: i64,
    tau_max: i64,
    vertices: Vec<BundlePoint>,
    index: HashMap<BundlePoint, usize>,
    preds: Vec<Vec<usize>>,
    tau_of: Vec<Option<usize>>,
    arrows: Vec<(BundlePoint, BundlePoint)>,
    relations: Vec<MeshRelation>,
    cache: RwLock<HashMap<usize, Arc<HomFrom>>>,
}

impl MeshWindow {
    pub fn new(wpl: &Wpl, tau_min: i64, tau_max: i64) -> Result<Self> {
        if tau_min > tau_max {
            return Err(Error::EmptyWindow { tau_min, tau_max });
        }
        let row = wpl.orbits_topological();
        let vertices: Vec<BundlePoint> = (tau_min..=tau_max)
            .rev()
            .flat_map(|m| row.iter().map(move |&o| BundlePoint::new(o, m)))
            .collect();
        let index: HashMap<BundlePoint, usize> = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut preds = Vec::with_capacity(vertices.len());
        let mut tau_of = Vec::with_capacity(vertices.len());
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        for &v in &vertices {
            let ps: Vec<usize> = wpl.predecessors(v).iter().filter_map(|p| index.get(p).copied()).collect();
            for &p in &ps {
                debug_assert!(p < index[&v], "window order is not topological");
                arrows.push((vertices[p], v));
            }
            let t = index.get(&v.tau(1)).copied();
            if t.is_some() {
                relations.push(MeshRelation {
                    vertex: v,
                    start: v.tau(1),
                    middle: ps.iter().map(|&p| vertices[p]).collect(),
                });
            }
            preds.push(ps);
            tau_of.push(t);
        }
        Ok(MeshWindow {
            weight: wpl.weight(),
            tau_min,
            tau_max,
            vertices,
            index,
            preds,
            tau_of,
            arrows,
            relations,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn tau_range(&self) -> (i64, i64) {
        (self.tau_min, self.tau_max)
    }

    /// Vertices in topological order.
    pub fn vertices(&self) -> &[BundlePoint] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(BundlePoint, BundlePoint)] {
        &self.arrows
    }

    /// One relation per vertex whose translate lies in the window.
    pub fn relations(&self) -> &[MeshRelation] {
        &self.relations
    }

    pub fn contains(&self, p: BundlePoint) -> bool {
        self.index.contains_key(&p)
    }

    fn locate(&self, p: BundlePoint) -> Result<usize> {
        self.index.get(&p).copied().ok_or(Error::MarginViolation(p))
    }

    fn hom_from(&self, sx: usize) -> Arc<HomFrom> {
        if let Some(h) = self.cache.read().expect("mesh cache").get(&sx) {
            return Arc::clone(h);
        }
        let h = Arc::new(self.compute_from(sx));
        self.cache.write().expect("mesh cache").insert(sx, Arc::clone(&h));
        h
    }

    fn compute_from(&self, sx: usize) -> HomFrom {
        let mut dims = vec![0usize; self.vertices.len()];
        let mut arrows: HashMap<(usize, usize), QMatrix> = HashMap::new();
        dims[sx] = 1;
        for y in sx + 1..self.vertices.len() {
            let zs: Vec<usize> = self.preds[y].iter().copied().filter(|&z| dims[z] > 0).collect();
            let total: usize = zs.iter().map(|&z| dims[z]).sum();
            if total == 0 {
                continue;
            }
            let q = match self.tau_of[y].filter(|&t| dims[t] > 0) {
                Some(t) => {
                    let blocks: Vec<&QMatrix> = zs.iter().map(|&z| &arrows[&(t, z)]).collect();
                    QMatrix::vstack(dims[t], &blocks).cokernel_projection()
                }
                None => QMatrix::identity(total),
            };
            dims[y] = q.rows();
            let mut offset = 0;
            for &z in &zs {
                arrows.insert((z, y), q.column_block(offset, offset + dims[z]));
                offset += dims[z];
            }
        }
        HomFrom { dims, arrows }
    }

    /// `dim Hom(x, y)` in the mesh category.
    pub fn hom_dim(&self, x: BundlePoint, y: BundlePoint) -> Result<u64> {
        let sx = self.locate(x)?;
        let sy = self.locate(y)?;
        Ok(self.hom_from(sx).dims[sy] as u64)
    }

    /// `dim Ext^1(x, y) = dim Hom(y, tau x)`; needs `tau x` in the window.
    pub fn ext_dim(&self, x: BundlePoint, y: BundlePoint) -> Result<u64> {
        self.hom_dim(y, x.tau(1))
    }

    /// `dim Hom(x, y)` modulo the morphisms that factor through some vertex satisfying `through`.
    pub fn factor_hom_dim(&self, x: BundlePoint, y: BundlePoint, through: impl Fn(BundlePoint) -> bool) -> Result<u64> {
        let sx = self.locate(x)?;
        let sy = self.locate(y)?;
        if sy < sx {
            return Ok(0);
        }
        let h = self.hom_from(sx);
        // columns of ideal[v] span the morphisms x -> v that factor through the set
        let mut ideal: HashMap<usize, QMatrix> = HashMap::new();
        for v in sx..=sy {
            let d = h.dims[v];
            if d == 0 {
                continue;
            }
            let span = if through(self.vertices[v]) {
                QMatrix::identity(d)
            } else {
                let images: Vec<QMatrix> = self.preds[v]
                    .iter()
                    .filter_map(|z| Some(h.arrows.get(&(*z, v))?.mul(ideal.get(z)?)))
                    .filter(|m| m.cols() > 0)
                    .collect();
                let refs: Vec<&QMatrix> = images.iter().collect();
                QMatrix::hstack(d, &refs).column_basis()
            };
            ideal.insert(v, span);
        }
        let d = h.dims[sy];
        let r = ideal.get(&sy).map_or(0, QMatrix::cols);
        Ok((d - r) as u64)
    }

    /// Number of paths from `x` to `y` in the window's quiver, without relations.
    pub fn path_count(&self, x: BundlePoint, y: BundlePoint) -> Result<u128> {
        let sx = self.locate(x)?;
        let sy = self.locate(y)?;
        let mut paths = vec![0u128; self.vertices.len()];
        paths[sx] = 1;
        for v in sx + 1..=sy.max(sx) {
            paths[v] = self.preds[v].iter().map(|&z| paths[z]).fold(0u128, u128::saturating_add);
        }
        Ok(paths[sy])
    }
}

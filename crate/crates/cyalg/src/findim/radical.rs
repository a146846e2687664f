use num::Zero;

use super::FindimError;
use crate::abc::FdAlgebra;
use crate::linalg::{kernel, Echelon, SparseVec, Q};
use crate::quiver_algebra::{Arrow, ArrowId, PathRepresentation, Quiver, VertexId};

/// Jacobson radical of a split basic algebra.
#[derive(Clone, Debug)]
pub struct Radical {
    basis: Vec<SparseVec>,
    span: Echelon,
    loewy_length: usize,
}

impl Radical {
    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &SparseVec) -> bool {
        self.span.contains(x)
    }

    /// Smallest `k` with `J^k = 0`.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }
}

/// Scalar by which `x` acts on the simple top at each idempotent.
pub(crate) fn simple_characters(alg: &FdAlgebra) -> Result<Vec<Vec<Q>>, FindimError> {
    let n = alg.dim();
    let mut chars = Vec::new();
    for i in 0..alg.num_idempotents() {
        let mut corner = Echelon::tracking();
        let mut basis = Vec::new();
        for b in 0..n {
            let v = alg.corner(i, &SparseVec::unit(b), i);
            if !v.is_zero() && corner.insert(v.clone()) {
                basis.push(v);
            }
        }
        let d = basis.len();
        if d == 0 {
            return Err(FindimError::NotSplitBasic(format!(
                "idempotent {} is zero",
                alg.idempotent_names()[i]
            )));
        }
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let c = alg.corner(i, &SparseVec::unit(b), i);
            let mut tr = Q::zero();
            if !c.is_zero() {
                for (t, v) in basis.iter().enumerate() {
                    let w = alg.mul(&c, v);
                    let coords = corner
                        .solve(&w)
                        .ok_or_else(|| FindimError::NotSplitBasic("corner not closed".into()))?;
                    tr += coords.get(t);
                }
            }
            row.push(tr / Q::from_integer(d.into()));
        }
        chars.push(row);
    }
    Ok(chars)
}

/// Radical as the kernel of the projection onto `k^m` given by the
/// idempotents, verified to be a nilpotent two-sided ideal.
pub fn radical(alg: &FdAlgebra) -> Result<Radical, FindimError> {
    let chars = simple_characters(alg)?;
    let n = alg.dim();
    let m = chars.len();
    let images: Vec<SparseVec> = (0..n)
        .map(|b| SparseVec::from_entries((0..m).map(|i| (i, chars[i][b].clone())).collect()))
        .collect();
    let basis = kernel(&images);
    if basis.len() + m != n {
        return Err(FindimError::NotSplitBasic(
            "semisimple quotient is not a product of copies of the field".into(),
        ));
    }
    let span = Echelon::from_vectors(&basis);
    for r in &basis {
        for b in 0..n {
            let bv = SparseVec::unit(b);
            if !span.contains(&alg.mul(r, &bv)) || !span.contains(&alg.mul(&bv, r)) {
                return Err(FindimError::NotSplitBasic(
                    "kernel of the projection is not an ideal".into(),
                ));
            }
        }
    }
    let mut power = basis.clone();
    let mut k = 1;
    while !power.is_empty() {
        if k > n + 1 {
            return Err(FindimError::NotSplitBasic(
                "radical is not nilpotent".into(),
            ));
        }
        power = product_span(alg, &power, &basis);
        k += 1;
    }
    Ok(Radical {
        basis,
        span,
        loewy_length: k,
    })
}

/// Echelon basis of `span{xy : x in xs, y in ys}`.
pub fn product_span(alg: &FdAlgebra, xs: &[SparseVec], ys: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for x in xs {
        for y in ys {
            let p = alg.mul(x, y);
            if !p.is_zero() {
                e.insert(p);
            }
        }
    }
    e.rows().to_vec()
}

/// Basis of `J^k` (`J^0` is the whole algebra).
pub fn radical_power(alg: &FdAlgebra, rad: &Radical, k: usize) -> Vec<SparseVec> {
    let mut p: Vec<SparseVec> = if k == 0 {
        (0..alg.dim()).map(SparseVec::unit).collect()
    } else {
        rad.basis.clone()
    };
    for _ in 1..k.max(1) {
        p = product_span(alg, &p, &rad.basis);
    }
    p
}

/// `layers[l][i][j] = dim e_i (J^l / J^(l+1)) e_j` for `l` below the Loewy
/// length.
pub fn radical_layers(alg: &FdAlgebra) -> Result<Vec<Vec<Vec<usize>>>, FindimError> {
    let rad = radical(alg)?;
    let m = alg.num_idempotents();
    let corner_dims = |vs: &[SparseVec]| -> Vec<Vec<usize>> {
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut e = Echelon::new();
                        for v in vs {
                            let c = alg.corner(i, v, j);
                            if !c.is_zero() {
                                e.insert(c);
                            }
                        }
                        e.rank()
                    })
                    .collect()
            })
            .collect()
    };
    let mut powers = vec![corner_dims(&radical_power(alg, &rad, 0))];
    let mut cur = rad.basis.clone();
    while !cur.is_empty() {
        powers.push(corner_dims(&cur));
        cur = product_span(alg, &cur, &rad.basis);
    }
    powers.push(vec![vec![0; m]; m]);
    Ok(powers
        .windows(2)
        .map(|w| {
            (0..m)
                .map(|i| (0..m).map(|j| w[0][i][j] - w[1][i][j]).collect())
                .collect()
        })
        .collect())
}

/// Gabriel quiver together with the chosen lifts of the arrows into `J`.
#[derive(Clone, Debug)]
pub struct GabrielQuiver {
    pub quiver: Quiver,
    pub arrow_images: Vec<SparseVec>,
    pub vertex_images: Vec<SparseVec>,
}

/// Arrows `i -> j` form a basis of `e_i (J/J^2) e_j`, lifted to basis
/// elements of the algebra whenever possible.
pub fn gabriel_quiver(alg: &FdAlgebra) -> Result<GabrielQuiver, FindimError> {
    let rad = radical(alg)?;
    let j2 = radical_power(alg, &rad, 2);
    let m = alg.num_idempotents();
    let mut arrows = Vec::new();
    let mut images = Vec::new();
    let mut used = std::collections::HashSet::new();
    for i in 0..m {
        for j in 0..m {
            let mut e = Echelon::new();
            for v in &j2 {
                let c = alg.corner(i, v, j);
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            let basis_cands =
                (0..alg.dim()).map(|b| (Some(b), alg.corner(i, &SparseVec::unit(b), j)));
            let rad_cands = rad.basis().iter().map(|r| (None, alg.corner(i, r, j)));
            let mut count = 0;
            for (b, v) in basis_cands.chain(rad_cands) {
                if v.is_zero() || !rad.contains(&v) || !e.insert(v.clone()) {
                    continue;
                }
                let single = b.filter(|&b| v == SparseVec::unit(b));
                let mut name = match single {
                    Some(b) => alg.name(b).to_string(),
                    None => format!("g{i}_{j}_{count}"),
                };
                while !used.insert(name.clone()) {
                    name.push('\'');
                }
                let degree = single
                    .and_then(|b| alg.grading().map(|g| g[b]))
                    .unwrap_or(0);
                arrows.push(Arrow {
                    name,
                    source: VertexId(i as u32),
                    target: VertexId(j as u32),
                    degree,
                });
                images.push(v);
                count += 1;
            }
        }
    }
    let quiver = Quiver::new(alg.idempotent_names().to_vec(), arrows)?;
    Ok(GabrielQuiver {
        quiver,
        arrow_images: images,
        vertex_images: alg.idempotents().to_vec(),
    })
}

/// An algebra with explicit images for the vertices and arrows of a quiver.
pub struct Presented<'a> {
    pub algebra: &'a FdAlgebra,
    pub vertex_images: Vec<SparseVec>,
    pub arrow_images: Vec<SparseVec>,
}

impl<'a> Presented<'a> {
    pub fn from_gabriel(algebra: &'a FdAlgebra, g: &GabrielQuiver) -> Self {
        Self {
            algebra,
            vertex_images: g.vertex_images.clone(),
            arrow_images: g.arrow_images.clone(),
        }
    }
}

impl PathRepresentation for Presented<'_> {
    fn dim(&self) -> usize {
        self.algebra.dim()
    }
    fn vertex_image(&self, v: VertexId) -> SparseVec {
        self.vertex_images[v.idx()].clone()
    }
    fn arrow_image(&self, a: ArrowId) -> SparseVec {
        self.arrow_images[a.idx()].clone()
    }
    fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.algebra.mul(x, y)
    }
}

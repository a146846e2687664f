use std::fmt;

use serde::Serialize;

use super::{
    cartan_unchecked, check_hereditary, coxeter_step, knit_component, ArError, Component, DimVec,
};
use crate::abc::{default_cap, AbcData};
use crate::quiver_algebra::{GradedModel, GradedQuiverPresentation};

/// The object `R(-twist)[shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub twist: i64,
    pub shift: i64,
}

impl Label {
    pub fn new(twist: i64, shift: i64) -> Self {
        Self { twist, shift }
    }

    /// `F` corresponds to the degree shift `(1)`.
    pub fn f(self) -> Self {
        Self {
            twist: self.twist - 1,
            ..self
        }
    }

    pub fn f_inv(self) -> Self {
        Self {
            twist: self.twist + 1,
            ..self
        }
    }

    /// `ν_d` corresponds to `(a)`.
    pub fn nu_d(self, a: usize) -> Self {
        Self {
            twist: self.twist - a as i64,
            ..self
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            0 => write!(f, "R")?,
            t => write!(f, "R({})", -t)?,
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

/// Labels with their dimension vectors; the shift is ignored by the
/// dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimVecOrbit {
    pub a: usize,
    pub labels: Vec<Label>,
    pub dims: Vec<DimVec>,
}

impl DimVecOrbit {
    pub fn dim_of(&self, l: Label) -> Option<&DimVec> {
        self.labels
            .iter()
            .position(|x| x.twist == l.twist)
            .map(|i| &self.dims[i])
    }

    /// `F^a = ν_d` on every label.
    pub fn label_level_holds(&self) -> bool {
        self.labels
            .iter()
            .all(|&l| (0..self.a).fold(l, |x, _| x.f()) == l.nu_d(self.a))
    }
}

/// Dimension vector of `R(-i)` as a right module over `A^op`:
/// entry `(l, r)` is `Σ_s dim e_r R_{l-i} e_s`, for slots `l < a`.
pub fn label_dims(model: &GradedModel, a: usize, i: i64) -> DimVec {
    let q = model.quiver();
    let vs: Vec<_> = q.vertices().collect();
    let mut out = Vec::with_capacity(a * vs.len());
    for l in 0..a as i64 {
        for &r in &vs {
            out.push(vs.iter().map(|&s| model.dim(l - i, r, s) as i64).sum());
        }
    }
    DimVec(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterCheck {
    pub label: Label,
    pub expected: DimVec,
    pub got: DimVec,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub a: usize,
    pub d: usize,
    pub steps: usize,
    pub orbit: DimVecOrbit,
    pub label_level: bool,
    /// The projectives of `A^op` have the dimension vectors of `R(-i)`, `i < a`.
    pub coherent: bool,
    /// `[R(-i-a)] = (-1)^d C Cᵀ⁻¹ [R(-i)]` with `C` the Cartan matrix of `A^op`.
    pub checks: Vec<CoxeterCheck>,
    /// For `d = 1`, the knitted component carries the same vectors.
    pub knit_agrees: Option<bool>,
    pub pass: bool,
}

/// Checks `F^a = ν_d` on labels and on classes of `R(-i)`, `0 <= i < steps`.
/// `Hom(T, -)` with `T = ⊕_{l<a} R(-l)` lands in right `A^op`-modules, so
/// all matrices are those of `A^op`. Dimension vectors come from graded
/// pieces of `R`; the Cartan matrix comes from the structure constants of `A`.
pub fn verify_root(
    pres: &GradedQuiverPresentation,
    a: usize,
    d: usize,
    steps: usize,
) -> Result<RootReport, ArError> {
    if a == 0 || d == 0 {
        return Err(ArError::InvalidParameter("a and d must be positive".into()));
    }
    let data = AbcData::new(pres, a, default_cap(a))?;
    let aop = data.algebra.opposite();
    if d == 1 {
        check_hereditary(&aop)?;
    }
    let c = cartan_unchecked(&aop);
    let cox = coxeter_step(&c)?;
    let step = if d % 2 == 1 {
        cox.phi_inv.clone()
    } else {
        cox.phi_inv.neg()
    };

    let model = GradedModel::exact_down_to(pres, -((steps + 2 * a) as i64), None)?;
    let nv = model.quiver().num_vertices();
    let labels: Vec<Label> = (0..(steps + a) as i64).map(|i| Label::new(i, 0)).collect();
    let dims: Vec<DimVec> = labels
        .iter()
        .map(|l| label_dims(&model, a, l.twist))
        .collect();
    let orbit = DimVecOrbit { a, labels, dims };

    let coherent = (0..a).all(|i| {
        let mut sum = DimVec::zero(a * nv);
        for s in 0..nv {
            sum.add_scaled(1, &DimVec(c.col(i * nv + s)));
        }
        sum == orbit.dims[i]
    });
    let checks: Vec<CoxeterCheck> = (0..steps)
        .map(|i| {
            let expected = DimVec::apply(&step, &orbit.dims[i]);
            let got = orbit.dims[i + a].clone();
            CoxeterCheck {
                label: orbit.labels[i + a],
                ok: expected == got,
                expected,
                got,
            }
        })
        .collect();
    let knit_agrees = if d == 1 {
        let levels = steps.div_ceil(a);
        let comp = knit_component(&aop, levels)?;
        Some(comp.vertices.iter().all(|x| {
            let (l, i) = (x.vertex / nv, x.vertex / nv + x.level * a);
            // Sum over the vertex summands of R(-i).
            i >= orbit.dims.len() || {
                let mut sum = DimVec::zero(a * nv);
                for y in comp
                    .vertices
                    .iter()
                    .filter(|y| y.level == x.level && y.vertex / nv == l)
                {
                    sum.add_scaled(1, &y.dim);
                }
                sum == orbit.dims[i]
            }
        }))
    } else {
        None
    };
    let label_level = orbit.label_level_holds();
    let pass = label_level && coherent && checks.iter().all(|c| c.ok) && knit_agrees != Some(false);
    Ok(RootReport {
        a,
        d,
        steps,
        orbit,
        label_level,
        coherent,
        checks,
        knit_agrees,
        pass,
    })
}

/// Preprojective component of `A^op` for `A = build_A(pres, a)`, with the
/// vertex `(l, r)` at level `n` labeled by the `r`-summand of `R(-(l + n a))`.
pub fn knit_labeled(
    pres: &GradedQuiverPresentation,
    a: usize,
    steps: usize,
) -> Result<Component, ArError> {
    let data = AbcData::new(pres, a, default_cap(a))?;
    let mut comp = knit_component(&data.algebra.opposite(), steps)?;
    let q = data.model.quiver();
    let nv = q.num_vertices();
    for x in &mut comp.vertices {
        let i = (x.vertex / nv + x.level * a) as i64;
        let l = Label::new(i, 0);
        x.twist = Some(i);
        x.label = if nv == 1 {
            l.to_string()
        } else {
            format!(
                "{}.{}",
                q.vertex_name(crate::quiver_algebra::VertexId((x.vertex % nv) as u32)),
                l
            )
        };
    }
    Ok(comp)
}

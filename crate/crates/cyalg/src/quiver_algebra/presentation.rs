use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use super::path::{NCPoly, Path};
use super::quiver::{Arrow, ArrowId, Quiver, VertexId};
use super::QuiverError;
use crate::linalg::{q, Q};

/// Diagonal graded automorphism: arrow `a` maps to `scalars[a] * a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    scalars: Vec<Q>,
}

impl Twist {
    pub fn identity(q: &Quiver) -> Self {
        Self {
            scalars: vec![Q::one(); q.num_arrows()],
        }
    }

    /// `x -> (-1)^{|x|} x`.
    pub fn sigma(q: &Quiver) -> Self {
        let scalars = q
            .arrows()
            .iter()
            .map(|a| {
                if a.degree.rem_euclid(2) == 0 {
                    Q::one()
                } else {
                    -Q::one()
                }
            })
            .collect();
        Self { scalars }
    }

    pub fn from_scalars(q: &Quiver, scalars: Vec<Q>) -> Result<Self, QuiverError> {
        if scalars.len() != q.num_arrows() {
            return Err(QuiverError::BadTwist("wrong number of scalars".into()));
        }
        if scalars.iter().any(|s| s.is_zero()) {
            return Err(QuiverError::BadTwist("zero scalar".into()));
        }
        Ok(Self { scalars })
    }

    pub fn scalar(&self, a: ArrowId) -> &Q {
        &self.scalars[a.idx()]
    }

    pub fn scalars(&self) -> &[Q] {
        &self.scalars
    }

    pub fn compose(&self, other: &Twist) -> Twist {
        Twist {
            scalars: self
                .scalars
                .iter()
                .zip(&other.scalars)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scalars.iter().all(|s| s.is_one())
    }

    /// Parses the body of a `[twist]` section: `sigma` or `arrow scalar` per
    /// line, `#` comments allowed.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self, QuiverError> {
        let lines: Vec<(String, usize)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (l.split('#').next().unwrap_or("").trim().to_string(), i + 1))
            .filter(|(l, _)| !l.is_empty() && l != "[twist]")
            .collect();
        twist_from_lines(q, &lines)
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> Twist {
        let mut t = Twist {
            scalars: vec![Q::one(); self.scalars.len()],
        };
        for _ in 0..k {
            t = t.compose(self);
        }
        t
    }
}

/// Declared Calabi-Yau data: bimodule `dimension`-CY with a-invariant `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyData {
    pub dimension: u32,
    pub a_invariant: i64,
}

/// Quiver with homogeneous relations, optional Nakayama twist and CY data.
#[derive(Clone, Debug)]
pub struct GradedQuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<NCPoly>,
    pub twist: Option<Twist>,
    pub cy: Option<CyData>,
}

impl GradedQuiverPresentation {
    /// Validates homogeneity; non-parallel relations are split into their
    /// parallel components, which generate the same ideal.
    pub fn new(quiver: Quiver, relations: Vec<NCPoly>) -> Result<Self, QuiverError> {
        let mut rels = Vec::new();
        for r in relations {
            for c in r.components() {
                if c.homogeneous_degree(&quiver).is_none() {
                    let (p, _) = c.lead().expect("nonzero component");
                    let d = p.degree(&quiver);
                    let bad = c
                        .terms()
                        .find(|(t, _)| t.degree(&quiver) != d)
                        .map(|(t, _)| t.display(&quiver))
                        .unwrap_or_default();
                    return Err(QuiverError::Inhomogeneous {
                        relation: c.display(&quiver),
                        term: bad,
                    });
                }
                if c.lead().map(|(p, _)| p.is_lazy()).unwrap_or(false) {
                    return Err(QuiverError::DegenerateRelation(c.display(&quiver)));
                }
                rels.push(c);
            }
        }
        Ok(Self {
            quiver,
            relations: rels,
            twist: None,
            cy: None,
        })
    }

    pub fn with_twist(mut self, t: Twist) -> Result<Self, QuiverError> {
        if t.scalars.len() != self.quiver.num_arrows() {
            return Err(QuiverError::BadTwist("wrong arity".into()));
        }
        self.twist = Some(t);
        Ok(self)
    }

    pub fn with_cy(mut self, cy: CyData) -> Self {
        self.cy = Some(cy);
        self
    }

    pub fn max_relation_weight(&self) -> u32 {
        self.relations
            .iter()
            .map(|r| r.max_weight())
            .max()
            .unwrap_or(0)
    }

    pub fn is_negatively_graded(&self) -> bool {
        self.quiver.arrows().iter().all(|a| a.degree < 0)
    }

    pub fn has_positive_arrows(&self) -> bool {
        self.quiver.arrows().iter().any(|a| a.degree > 0)
    }

    /// Same presentation with arrows re-declared in `order`.
    pub fn with_arrow_order(&self, order: &[ArrowId]) -> Result<Self, QuiverError> {
        let (nq, map) = self.quiver.reordered(order)?;
        let relations = self
            .relations
            .iter()
            .map(|r| remap_poly(r, &nq, &map))
            .collect();
        let twist = self.twist.as_ref().map(|t| {
            let mut s = vec![Q::one(); nq.num_arrows()];
            for (old, new) in map.iter().enumerate() {
                s[new.idx()] = t.scalars[old].clone();
            }
            Twist { scalars: s }
        });
        Ok(Self {
            quiver: nq,
            relations,
            twist,
            cy: self.cy,
        })
    }

    /// Replaces the quiver by one with the same arrows but new order weights.
    pub fn with_weights(&self, weights: Vec<u32>) -> Result<Self, QuiverError> {
        let nq = self.quiver.clone().with_weights(weights)?;
        let id: Vec<ArrowId> = nq.arrow_ids().collect();
        let relations = self
            .relations
            .iter()
            .map(|r| remap_poly(r, &nq, &id))
            .collect();
        Ok(Self {
            quiver: nq,
            relations,
            twist: self.twist.clone(),
            cy: self.cy,
        })
    }

    /// Parses a presentation file (see the crate README for the grammar).
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        parse_presentation(text)
    }

    /// Parses a relation expression against this quiver.
    pub fn parse_poly(&self, expr: &str) -> Result<NCPoly, QuiverError> {
        parse_expr(&self.quiver, expr).map_err(|m| QuiverError::Parse {
            line: 0,
            message: m,
        })
    }
}

/// Rewrites a polynomial through an arrow renumbering into quiver `nq`.
pub fn remap_poly(r: &NCPoly, nq: &Quiver, map: &[ArrowId]) -> NCPoly {
    let mut out = NCPoly::zero();
    for (p, c) in r.terms() {
        let np = if p.is_lazy() {
            Path::lazy(p.source())
        } else {
            let arrows: Vec<ArrowId> = p.arrows().iter().map(|a| map[a.idx()]).collect();
            Path::from_arrows(nq, &arrows).expect("remap preserves composability")
        };
        out.add_term(c.clone(), np);
    }
    out
}

impl fmt::Display for GradedQuiverPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.quiver)?;
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "  {}", r.display(&self.quiver))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Vertices,
    Arrows,
    Relations,
    Twist,
    Cy,
    Order,
    Weights,
}

fn perr(line: usize, message: impl Into<String>) -> QuiverError {
    QuiverError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_presentation(text: &str) -> Result<GradedQuiverPresentation, QuiverError> {
    let mut section = Section::None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String, i64, usize)> = Vec::new();
    let mut relations: Vec<(String, usize)> = Vec::new();
    let mut twist_lines: Vec<(String, usize)> = Vec::new();
    let mut cy_dim: Option<u32> = None;
    let mut cy_a: Option<i64> = None;
    let mut order: Option<(Vec<String>, usize)> = None;
    let mut weights: Vec<(String, u32, usize)> = Vec::new();

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            section = match line {
                "[vertices]" => Section::Vertices,
                "[arrows]" => Section::Arrows,
                "[relations]" => Section::Relations,
                "[twist]" => Section::Twist,
                "[cy]" => Section::Cy,
                "[order]" => Section::Order,
                "[weights]" => Section::Weights,
                other => return Err(perr(ln, format!("unknown section {other}"))),
            };
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::None => return Err(perr(ln, "content before first section")),
            Section::Vertices => vertices.extend(toks.iter().map(|t| t.to_string())),
            Section::Arrows => {
                if toks.len() != 4 {
                    return Err(perr(ln, "expected `name from to degree`"));
                }
                let d: i64 = toks[3]
                    .parse()
                    .map_err(|_| perr(ln, format!("bad degree {}", toks[3])))?;
                arrows.push((toks[0].into(), toks[1].into(), toks[2].into(), d, ln));
            }
            Section::Relations => relations.push((line.to_string(), ln)),
            Section::Twist => twist_lines.push((line.to_string(), ln)),
            Section::Cy => {
                if toks.len() != 2 {
                    return Err(perr(ln, "expected `dimension N` or `a N`"));
                }
                match toks[0] {
                    "dimension" => {
                        cy_dim = Some(toks[1].parse().map_err(|_| perr(ln, "bad dimension"))?)
                    }
                    "a" => cy_a = Some(toks[1].parse().map_err(|_| perr(ln, "bad a-invariant"))?),
                    k => return Err(perr(ln, format!("unknown cy key {k}"))),
                }
            }
            Section::Order => order = Some((toks.iter().map(|t| t.to_string()).collect(), ln)),
            Section::Weights => {
                if toks.len() != 2 {
                    return Err(perr(ln, "expected `arrow weight`"));
                }
                let w: u32 = toks[1].parse().map_err(|_| perr(ln, "bad weight"))?;
                weights.push((toks[0].into(), w, ln));
            }
        }
    }

    let mut arr = Vec::new();
    for (name, s, t, d, ln) in &arrows {
        let find = |n: &str| {
            vertices
                .iter()
                .position(|v| v == n)
                .map(|i| VertexId(i as u32))
                .ok_or_else(|| perr(*ln, format!("unknown vertex {n}")))
        };
        arr.push(Arrow {
            name: name.clone(),
            source: find(s)?,
            target: find(t)?,
            degree: *d,
        });
    }
    let mut quiver = Quiver::new(vertices, arr)?;
    if !weights.is_empty() {
        let mut w = vec![1u32; quiver.num_arrows()];
        for (name, x, ln) in &weights {
            let a = quiver
                .arrow_by_name(name)
                .ok_or_else(|| perr(*ln, format!("unknown arrow {name}")))?;
            w[a.idx()] = *x;
        }
        quiver = quiver.with_weights(w)?;
    }
    let mut polys = Vec::new();
    for (expr, ln) in &relations {
        let p = parse_expr(&quiver, expr).map_err(|m| perr(*ln, m))?;
        for c in p.components() {
            if c.homogeneous_degree(&quiver).is_none() {
                let d = c.lead().unwrap().0.degree(&quiver);
                let bad = c
                    .terms()
                    .find(|(t, _)| t.degree(&quiver) != d)
                    .unwrap()
                    .0
                    .display(&quiver);
                return Err(perr(
                    *ln,
                    format!("relation is not homogeneous; offending term {bad}"),
                ));
            }
        }
        polys.push(p);
    }
    let mut pres = GradedQuiverPresentation::new(quiver, polys)?;
    if !twist_lines.is_empty() {
        let t = twist_from_lines(&pres.quiver, &twist_lines)?;
        pres = pres.with_twist(t)?;
    }
    match (cy_dim, cy_a) {
        (Some(d), Some(a)) => {
            pres = pres.with_cy(CyData {
                dimension: d,
                a_invariant: a,
            })
        }
        (None, None) => {}
        _ => return Err(perr(0, "[cy] needs both `dimension` and `a`")),
    }
    if let Some((names, ln)) = order {
        let mut ids = Vec::new();
        for n in &names {
            ids.push(
                pres.quiver
                    .arrow_by_name(n)
                    .ok_or_else(|| perr(ln, format!("unknown arrow {n}")))?,
            );
        }
        pres = pres.with_arrow_order(&ids)?;
    }
    Ok(pres)
}

/// Lines `arrow scalar` or `sigma`, composed in order starting from the
/// identity. Unlisted arrows keep scalar 1.
fn twist_from_lines(q: &Quiver, lines: &[(String, usize)]) -> Result<Twist, QuiverError> {
    let mut t = Twist::identity(q);
    for (line, ln) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks == ["sigma"] {
            t = t.compose(&Twist::sigma(q));
            continue;
        }
        if toks.len() != 2 {
            return Err(perr(*ln, "expected `arrow scalar` or `sigma`"));
        }
        let a = q
            .arrow_by_name(toks[0])
            .ok_or_else(|| perr(*ln, format!("unknown arrow {}", toks[0])))?;
        let s =
            parse_scalar(toks[1]).ok_or_else(|| perr(*ln, format!("bad scalar {}", toks[1])))?;
        if s.is_zero() {
            return Err(perr(*ln, "twist scalar must be nonzero"));
        }
        t.scalars[a.idx()] = s;
    }
    Ok(t)
}

pub(crate) fn parse_scalar(tok: &str) -> Option<Q> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(crate::linalg::q_frac(n, d))
    } else {
        tok.trim().parse::<i64>().ok().map(q)
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '@' | '^' | '.')
}

/// Parses `lhs [= rhs]` where each side is a sum of terms
/// `[scalar *] factor * factor ...`; factors are arrow names, `e_<vertex>`,
/// or scalars.
fn parse_expr(q: &Quiver, expr: &str) -> Result<NCPoly, String> {
    match expr.split_once('=') {
        Some((l, r)) => Ok(parse_sum(q, l)?.sub(&parse_sum(q, r)?)),
        None => parse_sum(q, expr),
    }
}

fn parse_sum(q: &Quiver, s: &str) -> Result<NCPoly, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(NCPoly::zero());
    }
    let mut out = NCPoly::zero();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut sign = Q::one();
    let mut expect_term = true;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '+' || c == '-' {
            if c == '-' {
                sign = -sign;
            }
            expect_term = true;
            i += 1;
            continue;
        }
        if !expect_term {
            return Err(format!(
                "expected + or - before `{}`",
                chars[i..].iter().collect::<String>()
            ));
        }
        let start = i;
        while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            i += 1;
        }
        let term: String = chars[start..i].iter().collect();
        let (c, p) = parse_term(q, term.trim())?;
        if let Some(p) = p {
            out.add_term(&sign * c, p);
        }
        sign = Q::one();
        expect_term = false;
    }
    if expect_term && !out.is_zero() {
        return Err("dangling sign".into());
    }
    Ok(out)
}

fn parse_term(q: &Quiver, t: &str) -> Result<(Q, Option<Path>), String> {
    match parse_product(q, t)? {
        (c, Product::Path(p)) => Ok((c, Some(p))),
        (_, Product::Zero) => Ok((Q::zero(), None)),
        (_, Product::Scalar) => Err(format!("term `{t}` has no path factor")),
    }
}

/// Outcome of multiplying the factors of a monomial.
pub(crate) enum Product {
    /// Only scalar factors.
    Scalar,
    Path(Path),
    /// The path factors do not compose.
    Zero,
}

/// Parses `factor * factor * ...` where factors are scalars, arrow names or
/// `e_<vertex>`.
pub(crate) fn parse_product(q: &Quiver, t: &str) -> Result<(Q, Product), String> {
    let mut coef = Q::one();
    let mut path: Option<Path> = None;
    for f in t.split('*') {
        let f = f.trim();
        if f.is_empty() {
            return Err(format!("empty factor in `{t}`"));
        }
        if f.starts_with(|c: char| c.is_ascii_digit() || c == '(') {
            let inner = f.trim_start_matches('(').trim_end_matches(')');
            coef *= parse_scalar(inner).ok_or_else(|| format!("bad scalar `{f}`"))?;
            continue;
        }
        if !f.chars().all(is_ident_char) {
            return Err(format!("bad factor `{f}`"));
        }
        let p = if let Some(v) = f.strip_prefix("e_") {
            match q.vertex_by_name(v) {
                Some(vid) => Path::lazy(vid),
                None => arrow_path(q, f)?,
            }
        } else {
            arrow_path(q, f)?
        };
        path = match path {
            None => Some(p),
            Some(prev) => match prev.compose(&p) {
                Some(c) => Some(c),
                None => return Ok((Q::zero(), Product::Zero)),
            },
        };
    }
    Ok((coef, path.map_or(Product::Scalar, Product::Path)))
}

fn arrow_path(q: &Quiver, name: &str) -> Result<Path, String> {
    let a = q
        .arrow_by_name(name)
        .ok_or_else(|| format!("unknown arrow `{name}`"))?;
    Ok(Path::arrow(q, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    const KXY: &str = "
[vertices]
0
[arrows]
x 0 0 -1
y 0 0 -1
[relations]
x*y = y*x
[cy]
dimension 2
a 2
";

    #[test]
    fn parses_polynomial_ring() {
        let p = GradedQuiverPresentation::parse(KXY).unwrap();
        assert_eq!(p.quiver.num_arrows(), 2);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].display(&p.quiver), "x*y - y*x");
        assert_eq!(
            p.cy,
            Some(CyData {
                dimension: 2,
                a_invariant: 2
            })
        );
    }

    #[test]
    fn twist_files() {
        let p = GradedQuiverPresentation::parse(KXY).unwrap();
        let t = Twist::parse(&p.quiver, "[twist]\n# minus one\nx -1\ny -1 \n").unwrap();
        assert_eq!(t, Twist::sigma(&p.quiver));
        assert_eq!(
            Twist::parse(&p.quiver, "sigma").unwrap(),
            Twist::sigma(&p.quiver)
        );
        assert!(matches!(
            Twist::parse(&p.quiver, "x 2\nz 1"),
            Err(QuiverError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_inhomogeneous_with_term() {
        let txt = "[vertices]\n0\n[arrows]\nx 0 0 -1\ny 0 0 -2\n[relations]\nx*x - y*x\n";
        match GradedQuiverPresentation::parse(txt) {
            Err(QuiverError::Parse { line, message }) => {
                assert_eq!(line, 7);
                assert!(
                    message.contains("y*x") || message.contains("x*x"),
                    "{message}"
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rational_scalars_and_idempotents() {
        let txt = "[vertices]\na b\n[arrows]\nx a b -1\n[relations]\n1/2*e_a*x - (1/2)*x\n";
        let p = GradedQuiverPresentation::parse(txt).unwrap();
        assert!(p.relations.is_empty() || p.relations.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn sigma_twist_keyword() {
        let txt = format!("{KXY}[twist]\nsigma\n");
        let p = GradedQuiverPresentation::parse(&txt).unwrap();
        let t = p.twist.unwrap();
        assert_eq!(t.scalar(ArrowId(0)), &-Q::one());
    }
}

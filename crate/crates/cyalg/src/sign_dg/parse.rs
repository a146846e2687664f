use num::One;

use super::complex::{BimoduleComplex, FreeSummand, Setting, TensorPoly};
use super::SignDgError;
use crate::linalg::Q;
use crate::quiver_algebra::{
    parse_product, GradedQuiverPresentation, Path, Product, Quiver, VertexId,
};

fn perr(line: usize, message: impl Into<String>) -> SignDgError {
    SignDgError::Parse {
        line,
        message: message.into(),
    }
}

fn vertex(q: &Quiver, name: &str, line: usize) -> Result<VertexId, SignDgError> {
    q.vertex_by_name(name.trim())
        .ok_or_else(|| perr(line, format!("unknown vertex `{}`", name.trim())))
}

/// `s>t@l`, `v@l`, `s>t` or `v`.
fn parse_summand(q: &Quiver, tok: &str, line: usize) -> Result<FreeSummand, SignDgError> {
    let (pair, shift) = match tok.split_once('@') {
        Some((p, l)) => (
            p,
            l.trim()
                .parse::<i64>()
                .map_err(|_| perr(line, format!("bad shift in `{tok}`")))?,
        ),
        None => (tok, 0),
    };
    let (left, right) = match pair.split_once('>') {
        Some((s, t)) => (vertex(q, s, line)?, vertex(q, t, line)?),
        None => {
            let v = vertex(q, pair, line)?;
            (v, v)
        }
    };
    Ok(FreeSummand { left, right, shift })
}

/// One side of `u|v`; a bare scalar stands for the lazy path at `lazy_at`.
fn parse_side(q: &Quiver, s: &str, lazy_at: VertexId) -> Result<Option<(Q, Path)>, String> {
    Ok(match parse_product(q, s)? {
        (c, Product::Scalar) => Some((c, Path::lazy(lazy_at))),
        (c, Product::Path(p)) => Some((c, p)),
        (_, Product::Zero) => None,
    })
}

/// `Σ ± [c*] u|v` for an entry leaving the generator `src`.
fn parse_entry(q: &Quiver, s: &str, src: FreeSummand) -> Result<TensorPoly, String> {
    let mut out = TensorPoly::zero();
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    let mut sign = Q::one();
    let mut cur = String::new();
    let flush = |cur: &mut String, sign: &Q, out: &mut TensorPoly| -> Result<(), String> {
        let t = cur.trim();
        if t.is_empty() {
            return Err("empty term".into());
        }
        let (u, v) = t
            .split_once('|')
            .ok_or_else(|| format!("term `{t}` lacks `|`"))?;
        if let (Some((a, u)), Some((b, v))) =
            (parse_side(q, u, src.left)?, parse_side(q, v, src.right)?)
        {
            out.add_term(sign * a * b, u, v);
        }
        cur.clear();
        Ok(())
    };
    let mut pending = false;
    for c in s.chars() {
        match c {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    flush(&mut cur, &sign, &mut out)?;
                    sign = Q::one();
                }
                if c == '-' {
                    sign = -sign;
                }
                pending = true;
            }
            _ => {
                cur.push(c);
                pending = false;
            }
        }
    }
    if pending {
        return Err("dangling sign".into());
    }
    flush(&mut cur, &sign, &mut out)?;
    Ok(out)
}

/// Reads a complex of free bimodules over `pres`:
///
/// ```text
/// [complex]
/// start -2
/// [terms]
/// term 0 = 0@2
/// term 1 = 0@1, 0@1
/// term 2 = 0
/// [maps]
/// map 0 0 0 = -y|1 + 1|y
/// ```
///
/// `map k i j` is the component from generator `i` of term `k` to generator
/// `j` of term `k + 1`; a summand `s>t@l` is `R e_s ⊗ e_t R (l)`. A line `dg`
/// in `[complex]` marks a complex over the DG enveloping algebra.
pub fn parse_complex(
    pres: &GradedQuiverPresentation,
    text: &str,
) -> Result<BimoduleComplex, SignDgError> {
    let q = &pres.quiver;
    #[derive(PartialEq)]
    enum Sec {
        None,
        Complex,
        Terms,
        Maps,
    }
    let mut sec = Sec::None;
    let mut start: Option<i64> = None;
    let mut setting = Setting::Graded;
    let mut terms: Vec<Option<Vec<FreeSummand>>> = Vec::new();
    let mut maps: Vec<(usize, usize, usize, String, usize)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            sec = match line {
                "[complex]" => Sec::Complex,
                "[terms]" => Sec::Terms,
                "[maps]" => Sec::Maps,
                _ => return Err(perr(ln, format!("unknown section {line}"))),
            };
            continue;
        }
        match sec {
            Sec::None => return Err(perr(ln, "content before any section")),
            Sec::Complex => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                match toks.as_slice() {
                    ["start", s] => start = Some(s.parse().map_err(|_| perr(ln, "bad start"))?),
                    ["dg"] => setting = Setting::Dg,
                    _ => return Err(perr(ln, format!("unknown setting `{line}`"))),
                }
            }
            Sec::Terms => {
                let (head, body) = line
                    .split_once('=')
                    .ok_or_else(|| perr(ln, "expected `term k = ...`"))?;
                let k = head
                    .trim()
                    .strip_prefix("term")
                    .and_then(|s| s.trim().parse::<usize>().ok())
                    .ok_or_else(|| perr(ln, "expected `term k`"))?;
                let body = body.trim();
                let gens = if body.is_empty() {
                    Vec::new()
                } else {
                    body.split(',')
                        .map(|t| parse_summand(q, t.trim(), ln))
                        .collect::<Result<Vec<_>, _>>()?
                };
                if terms.len() <= k {
                    terms.resize(k + 1, None);
                }
                if terms[k].replace(gens).is_some() {
                    return Err(perr(ln, format!("term {k} declared twice")));
                }
            }
            Sec::Maps => {
                let (head, body) = line
                    .split_once('=')
                    .ok_or_else(|| perr(ln, "expected `map k i j = ...`"))?;
                let idx: Vec<usize> = head
                    .trim()
                    .strip_prefix("map")
                    .ok_or_else(|| perr(ln, "expected `map k i j`"))?
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| perr(ln, "bad map indices"))?;
                if idx.len() != 3 {
                    return Err(perr(ln, "expected three map indices"));
                }
                maps.push((idx[0], idx[1], idx[2], body.to_string(), ln));
            }
        }
    }
    let terms: Vec<Vec<FreeSummand>> = terms
        .into_iter()
        .enumerate()
        .map(|(k, t)| t.ok_or_else(|| perr(0, format!("term {k} missing"))))
        .collect::<Result<_, _>>()?;
    if terms.is_empty() {
        return Err(perr(0, "no terms"));
    }
    let start = start.unwrap_or(-(terms.len() as i64 - 1));
    let mut diffs: Vec<Vec<Vec<TensorPoly>>> = (0..terms.len() - 1)
        .map(|k| vec![vec![TensorPoly::zero(); terms[k + 1].len()]; terms[k].len()])
        .collect();
    for (k, i, j, body, ln) in maps {
        if k + 1 >= terms.len() || i >= terms[k].len() || j >= terms[k + 1].len() {
            return Err(perr(ln, format!("map {k} {i} {j} is out of range")));
        }
        let e = parse_entry(q, &body, terms[k][i]).map_err(|m| perr(ln, m))?;
        if !diffs[k][i][j].is_zero() {
            return Err(perr(ln, format!("map {k} {i} {j} given twice")));
        }
        diffs[k][i][j] = e;
    }
    BimoduleComplex::new(pres.clone(), setting, start, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    #[test]
    fn scalars_multiply_across_the_bar() {
        let pres = GradedQuiverPresentation::parse("[vertices]\n0\n[arrows]\nx 0 0 -1\n").unwrap();
        let src = FreeSummand {
            left: VertexId(0),
            right: VertexId(0),
            shift: 1,
        };
        let e = parse_entry(&pres.quiver, "2*x|1 - 1|3*x", src).unwrap();
        assert_eq!(e.display(&pres.quiver), "-3*1|x + 2*x|1");
        assert!(e.terms().all(|(_, _, c)| !c.is_zero()));
    }
}

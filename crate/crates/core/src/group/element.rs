//! Concrete element representations backing a [`GroupTable`](super::GroupTable).
//!
//! Every element is stored as a fixed-size byte code whose meaning depends on
//! the [`Kind`]: point images for permutations, matrix entries mod `p` for
//! matrix groups. Products follow the left-to-right convention: for
//! permutations `(xy)(i) = y(x(i))`, for matrices the ordinary product `X·Y`.

use crate::error::{AtlasError, Result};

/// Largest permutation degree representable in a [`Code`].
pub const MAX_DEGREE: usize = 16;

pub type Code = [u8; MAX_DEGREE];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Permutations of `1..=degree`; code holds 0-based images.
    Permutation { degree: u8 },
    /// 2×2 matrices `[a b; c d]` over F_p, code `[a, b, c, d]`. When
    /// `projective`, a matrix and its negative are identified and the
    /// lexicographically smaller code is kept.
    Matrix2 { p: u8, projective: bool },
    /// Upper unitriangular 3×3 matrices `[1 a c; 0 1 b; 0 0 1]` over F_p,
    /// code `[a, b, c]`.
    Heisenberg { p: u8 },
}

impl Kind {
    pub fn identity(&self) -> Code {
        let mut c = [0u8; MAX_DEGREE];
        match *self {
            Kind::Permutation { .. } => {
                for (i, v) in c.iter_mut().enumerate() {
                    *v = i as u8;
                }
            }
            Kind::Matrix2 { .. } => {
                c[0] = 1;
                c[3] = 1;
            }
            Kind::Heisenberg { .. } => {}
        }
        c
    }

    pub fn compose(&self, a: &Code, b: &Code) -> Code {
        match *self {
            Kind::Permutation { .. } => {
                let mut out = [0u8; MAX_DEGREE];
                for i in 0..MAX_DEGREE {
                    out[i] = b[a[i] as usize];
                }
                out
            }
            Kind::Matrix2 { p, projective } => {
                let p = p as u32;
                let e = |i: usize| a[i] as u32;
                let f = |i: usize| b[i] as u32;
                let mut out = [0u8; MAX_DEGREE];
                out[0] = ((e(0) * f(0) + e(1) * f(2)) % p) as u8;
                out[1] = ((e(0) * f(1) + e(1) * f(3)) % p) as u8;
                out[2] = ((e(2) * f(0) + e(3) * f(2)) % p) as u8;
                out[3] = ((e(2) * f(1) + e(3) * f(3)) % p) as u8;
                if projective {
                    normalize_projective(&mut out, p as u8);
                }
                out
            }
            Kind::Heisenberg { p } => {
                let p = p as u32;
                let mut out = [0u8; MAX_DEGREE];
                out[0] = ((a[0] as u32 + b[0] as u32) % p) as u8;
                out[1] = ((a[1] as u32 + b[1] as u32) % p) as u8;
                out[2] = ((a[2] as u32 + b[2] as u32 + a[0] as u32 * b[1] as u32) % p) as u8;
                out
            }
        }
    }

    pub fn name(&self, c: &Code) -> String {
        match *self {
            Kind::Permutation { degree } => cycle_notation(c, degree as usize),
            Kind::Matrix2 { .. } => format!("[[{},{}],[{},{}]]", c[0], c[1], c[2], c[3]),
            Kind::Heisenberg { .. } => {
                format!("[[1,{},{}],[0,1,{}],[0,0,1]]", c[0], c[2], c[1])
            }
        }
    }
}

pub(crate) fn normalize_projective(m: &mut Code, p: u8) {
    let neg: Vec<u8> = m[..4].iter().map(|&v| (p - v) % p).collect();
    if neg.as_slice() < &m[..4] {
        m[..4].copy_from_slice(&neg);
    }
}

pub(crate) fn matrix2(entries: [u32; 4], p: u32, projective: bool) -> Code {
    let mut c = [0u8; MAX_DEGREE];
    for (i, v) in entries.iter().enumerate() {
        c[i] = (v % p) as u8;
    }
    if projective {
        normalize_projective(&mut c, p as u8);
    }
    c
}

fn cycle_notation(c: &Code, degree: usize) -> String {
    let mut seen = [false; MAX_DEGREE];
    let mut out = String::new();
    for start in 0..degree {
        if seen[start] || c[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(i + 1).to_string());
            i = c[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses cycle notation such as `(1 2 3)(4 5)` into a permutation code.
///
/// Cycles are multiplied left to right. Points are 1-based and may be
/// separated by spaces or commas. Returns the code together with the largest
/// point mentioned.
pub fn parse_cycles(text: &str) -> Result<(Code, usize)> {
    let perm_kind = Kind::Permutation {
        degree: MAX_DEGREE as u8,
    };
    let mut acc = perm_kind.identity();
    let mut max_point = 0;
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(AtlasError::Parse("empty permutation".into()));
    }
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| AtlasError::Parse(format!("expected `(` in `{text}`")))?;
        let close = open
            .find(')')
            .ok_or_else(|| AtlasError::Parse(format!("unclosed cycle in `{text}`")))?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();

        let mut points = Vec::new();
        for tok in body.split(|ch: char| ch.is_whitespace() || ch == ',') {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| AtlasError::Parse(format!("bad point `{tok}` in `{text}`")))?;
            if p == 0 || p > MAX_DEGREE {
                return Err(AtlasError::Parse(format!(
                    "point {p} outside 1..={MAX_DEGREE}"
                )));
            }
            if points.contains(&(p - 1)) {
                return Err(AtlasError::Parse(format!("repeated point {p} in `{text}`")));
            }
            points.push(p - 1);
            max_point = max_point.max(p);
        }
        let mut cycle = perm_kind.identity();
        for (k, &pt) in points.iter().enumerate() {
            cycle[pt] = points[(k + 1) % points.len()] as u8;
        }
        acc = perm_kind.compose(&acc, &cycle);
    }
    Ok((acc, max_point))
}

/// Splits `(1 2),(2 3)(4 5)` at top-level commas.
pub fn split_generators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

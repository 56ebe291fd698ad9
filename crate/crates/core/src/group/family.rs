use std::fmt;
use std::str::FromStr;

use super::element::{matrix2, parse_cycles, split_generators, Code, Kind, MAX_DEGREE};
use super::{BuildOptions, GroupTable};
use crate::error::{AtlasError, Result};

/// Named group families understood by the group-spec grammar:
/// `S<n>`, `A<n>`, `D<2n>`, `Q8`, `SL2(<p>)`, `PSL2(<p>)`, `ES(<p>)` and
/// `perm:<cycles>[,<cycles>...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFamily {
    Symmetric(usize),
    Alternating(usize),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    Quaternion8,
    Sl2(u32),
    Psl2(u32),
    /// Extraspecial group of order p³ and exponent p.
    ExtraspecialExpP(u32),
    /// Permutation group generated by the listed cycle strings.
    Perm(Vec<String>),
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Symmetric(n) => write!(f, "S{n}"),
            GroupFamily::Alternating(n) => write!(f, "A{n}"),
            GroupFamily::Dihedral(n) => write!(f, "D{n}"),
            GroupFamily::Quaternion8 => write!(f, "Q8"),
            GroupFamily::Sl2(p) => write!(f, "SL2({p})"),
            GroupFamily::Psl2(p) => write!(f, "PSL2({p})"),
            GroupFamily::ExtraspecialExpP(p) => write!(f, "ES({p})"),
            GroupFamily::Perm(gens) => write!(f, "perm:{}", gens.join(",")),
        }
    }
}

fn parse_num(text: &str, spec: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| AtlasError::Parse(format!("bad number in group spec `{spec}`")))
}

fn parse_paren(rest: &str, spec: &str) -> Result<u32> {
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| AtlasError::Parse(format!("expected `(<p>)` in `{spec}`")))?;
    Ok(parse_num(inner, spec)? as u32)
}

impl FromStr for GroupFamily {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self> {
        let spec = s.trim();
        if let Some(rest) = spec.strip_prefix("perm:") {
            let gens: Vec<String> = split_generators(rest).into_iter().map(str::to_owned).collect();
            if gens.is_empty() {
                return Err(AtlasError::Parse(format!("no generators in `{spec}`")));
            }
            for g in &gens {
                parse_cycles(g)?;
            }
            return Ok(GroupFamily::Perm(gens));
        }
        if spec == "Q8" {
            return Ok(GroupFamily::Quaternion8);
        }
        if let Some(rest) = spec.strip_prefix("PSL2") {
            return Ok(GroupFamily::Psl2(parse_paren(rest, spec)?));
        }
        if let Some(rest) = spec.strip_prefix("SL2") {
            return Ok(GroupFamily::Sl2(parse_paren(rest, spec)?));
        }
        if let Some(rest) = spec.strip_prefix("ES") {
            return Ok(GroupFamily::ExtraspecialExpP(parse_paren(rest, spec)?));
        }
        let digits_after = |prefix: &str| {
            spec.strip_prefix(prefix)
                .filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
        };
        if let Some(rest) = digits_after("S") {
            return Ok(GroupFamily::Symmetric(parse_num(rest, spec)?));
        }
        if let Some(rest) = digits_after("A") {
            return Ok(GroupFamily::Alternating(parse_num(rest, spec)?));
        }
        if let Some(rest) = digits_after("D") {
            return Ok(GroupFamily::Dihedral(parse_num(rest, spec)?));
        }
        Err(AtlasError::UnknownFamily(spec.to_owned()))
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn perm_code(images: impl IntoIterator<Item = usize>) -> Code {
    let mut c = Kind::Permutation { degree: MAX_DEGREE as u8 }.identity();
    for (i, v) in images.into_iter().enumerate() {
        c[i] = v as u8;
    }
    c
}

fn cycle(points: &[usize]) -> Code {
    let mut c = Kind::Permutation { degree: MAX_DEGREE as u8 }.identity();
    for (k, &p) in points.iter().enumerate() {
        c[p] = points[(k + 1) % points.len()] as u8;
    }
    c
}

/// Builds the group described by `family` with deterministic indexing.
pub fn build_named_group(family: &GroupFamily, opts: BuildOptions) -> Result<GroupTable> {
    let label = family.to_string();
    match *family {
        GroupFamily::Symmetric(n) => {
            if n == 0 || n > 8 {
                return Err(AtlasError::Unsupported(format!("S{n}: degree must be 1..=8")));
            }
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(cycle(&[0, 1]));
            }
            if n >= 3 {
                gens.push(cycle(&(0..n).collect::<Vec<_>>()));
            }
            GroupTable::generate(label, Kind::Permutation { degree: n as u8 }, &gens, opts)
        }
        GroupFamily::Alternating(n) => {
            if n == 0 || n > 8 {
                return Err(AtlasError::Unsupported(format!("A{n}: degree must be 1..=8")));
            }
            let gens: Vec<Code> = (2..n).map(|k| cycle(&[0, 1, k])).collect();
            GroupTable::generate(label, Kind::Permutation { degree: n as u8 }, &gens, opts)
        }
        GroupFamily::Dihedral(order) => {
            if order % 2 != 0 || order < 6 || order / 2 > MAX_DEGREE {
                return Err(AtlasError::Unsupported(format!(
                    "D{order}: order must be 2n with 3 <= n <= {MAX_DEGREE}"
                )));
            }
            let n = order / 2;
            let rotation = perm_code((0..n).map(|i| (i + 1) % n));
            let reflection = perm_code((0..n).map(|i| n - 1 - i));
            GroupTable::generate(label, Kind::Permutation { degree: n as u8 }, &[rotation, reflection], opts)
        }
        GroupFamily::Quaternion8 => {
            let kind = Kind::Matrix2 { p: 3, projective: false };
            let i = matrix2([0, 2, 1, 0], 3, false);
            let j = matrix2([1, 1, 1, 2], 3, false);
            let mut g = GroupTable::generate(label, kind, &[i, j], opts)?;
            let i = g.parse_element(&kind.name(&i))?;
            let j = g.parse_element(&kind.name(&j))?;
            let k = g.mul(i, j);
            let minus = g.mul(i, i);
            let mut names = vec![String::new(); 8];
            for (e, n) in [(0, "1"), (minus, "-1"), (i, "i"), (j, "j"), (k, "k")] {
                names[e as usize] = n.to_owned();
                if e != 0 && e != minus {
                    names[g.mul(e, minus) as usize] = format!("-{n}");
                }
            }
            g.names = names;
            Ok(g)
        }
        GroupFamily::Sl2(p) | GroupFamily::Psl2(p) => {
            if !is_prime(p) {
                return Err(AtlasError::NotPrime(p));
            }
            if p > 13 {
                return Err(AtlasError::Unsupported(format!("p = {p} > 13")));
            }
            let projective = matches!(family, GroupFamily::Psl2(_));
            let kind = Kind::Matrix2 { p: p as u8, projective };
            let t = matrix2([1, 1, 0, 1], p, projective);
            let s = matrix2([0, p - 1, 1, 0], p, projective);
            GroupTable::generate(label, kind, &[t, s], opts)
        }
        GroupFamily::ExtraspecialExpP(p) => {
            if !is_prime(p) {
                return Err(AtlasError::NotPrime(p));
            }
            if p == 2 || p > 7 {
                return Err(AtlasError::Unsupported(format!("ES({p}): p must be an odd prime <= 7")));
            }
            let mut x = [0u8; MAX_DEGREE];
            x[0] = 1;
            let mut y = [0u8; MAX_DEGREE];
            y[1] = 1;
            GroupTable::generate(label, Kind::Heisenberg { p: p as u8 }, &[x, y], opts)
        }
        GroupFamily::Perm(ref gens) => {
            let mut codes = Vec::new();
            let mut degree = 1;
            for g in gens {
                let (code, max_point) = parse_cycles(g)?;
                degree = degree.max(max_point);
                codes.push(code);
            }
            GroupTable::generate(label, Kind::Permutation { degree: degree as u8 }, &codes, opts)
        }
    }
}

use super::{Elem, OrderedSemigroup, SemigroupKind};
use crate::error::{Error, Result};

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

pub(crate) fn superscript(n: usize) -> String {
    n.to_string().chars().map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Rewrites `^12` as `¹²` (unicode mode).
fn prettify(name: &str) -> String {
    let mut out = String::new();
    let mut chars = name.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' && chars.peek().is_some_and(|d| d.is_ascii_digit()) {
            while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                out.push(SUPERSCRIPTS[d.to_digit(10).unwrap() as usize]);
                chars.next();
            }
        } else {
            out.push(c);
        }
    }
    out
}

/// Rewrites superscript runs as `^digits`.
fn normalize(s: &str) -> String {
    let mut out = String::new();
    let mut in_sup = false;
    for c in s.trim().chars() {
        match SUPERSCRIPTS.iter().position(|&x| x == c) {
            Some(d) => {
                if !in_sup {
                    out.push('^');
                    in_sup = true;
                }
                out.push(char::from_digit(d as u32, 10).unwrap());
            }
            None => {
                in_sup = false;
                out.push(c);
            }
        }
    }
    out
}

/// Splits at commas that are not nested inside parentheses.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl OrderedSemigroup {
    pub fn format_elem(&self, e: &Elem, ascii: bool) -> String {
        match (&self.kind, e) {
            (_, Elem::One) => "1".into(),
            (SemigroupKind::Unitarized(s), x) => s.format_elem(x, ascii),
            (SemigroupKind::FreeAbelian { generators }, Elem::Mono(m)) => {
                let joined = generators.iter().all(|g| g.chars().count() == 1);
                let mut parts = Vec::new();
                let mut i = 0;
                while i < m.0.len() {
                    let g = m.0[i];
                    let mut j = i;
                    while j < m.0.len() && m.0[j] == g {
                        j += 1;
                    }
                    let name = &generators[g as usize];
                    parts.push(match (j - i, ascii) {
                        (1, _) => name.clone(),
                        (k, true) => format!("{name}^{k}"),
                        (k, false) => format!("{name}{}", superscript(k)),
                    });
                    i = j;
                }
                parts.join(if joined { "" } else { "*" })
            }
            (SemigroupKind::FinitePIdempotent(t), Elem::Ranked(r))
            | (SemigroupKind::ElementaryPGroup { table: t, .. }, Elem::Ranked(r)) => {
                let n = &t.names[*r as usize];
                if ascii {
                    n.clone()
                } else {
                    prettify(n)
                }
            }
            (SemigroupKind::OrderedSet { letters }, Elem::Letter(i)) => letters[*i as usize].clone(),
            (SemigroupKind::Product(a, b), Elem::Pair(pr)) => {
                format!("({},{})", a.format_elem(&pr.0, ascii), b.format_elem(&pr.1, ascii))
            }
            _ => format!("{e:?}"),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = normalize(s);
        let bad = || Error::Parse(format!("'{s}' is not an element of this semigroup"));
        if s == "1" {
            return self.identity().ok_or_else(bad);
        }
        match &self.kind {
            SemigroupKind::Unitarized(inner) => inner.parse_elem(&s),
            SemigroupKind::FreeAbelian { generators } => {
                let mut idx: Vec<u16> = Vec::new();
                for piece in s.split('*') {
                    let mut rest = piece.trim();
                    if rest.is_empty() {
                        return Err(bad());
                    }
                    while !rest.is_empty() {
                        let (g, name) = generators
                            .iter()
                            .enumerate()
                            .filter(|(_, n)| rest.starts_with(n.as_str()))
                            .max_by_key(|(_, n)| n.len())
                            .ok_or_else(bad)?;
                        rest = &rest[name.len()..];
                        let mut k = 1usize;
                        if let Some(r) = rest.strip_prefix('^') {
                            let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
                            k = digits.parse().map_err(|_| bad())?;
                            if k == 0 {
                                return Err(bad());
                            }
                            rest = &r[digits.len()..];
                        }
                        idx.extend(std::iter::repeat(g as u16).take(k));
                    }
                }
                Ok(Elem::mono(&idx))
            }
            SemigroupKind::FinitePIdempotent(t) | SemigroupKind::ElementaryPGroup { table: t, .. } => t
                .names
                .iter()
                .position(|n| *n == s)
                .map(|r| Elem::Ranked(r as u32))
                .ok_or_else(bad),
            SemigroupKind::OrderedSet { letters } => {
                letters.iter().position(|n| *n == s).map(|i| Elem::Letter(i as u32)).ok_or_else(bad)
            }
            SemigroupKind::Product(a, b) => {
                let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let parts = split_top_level(inner, ',');
                if parts.len() != 2 {
                    return Err(bad());
                }
                Ok(Elem::pair(a.parse_elem(parts[0])?, b.parse_elem(parts[1])?))
            }
        }
    }
}

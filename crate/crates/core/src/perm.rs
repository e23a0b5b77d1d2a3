//! Permutations of `{0, .., d-1}` acting on the right, with 1-based cycle
//! notation for I/O: `(2, 4, 8, 6, 3)(5, 10, 15, 13, 9)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// `images[i]` is the image of point `i`. Products compose left to right:
/// `(p * q)(i) = q(p(i))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// None unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images: images.into_iter().map(|i| i as u32).collect() })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| other.images[j as usize] == self.images[other.images[i] as usize])
    }

    pub fn is_even(&self) -> bool {
        let mut seen = alloc::vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    pub fn order(&self) -> u128 {
        let mut seen = alloc::vec![false; self.degree()];
        let mut order: u128 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    /// Parses 1-based cycle notation. `()` or an empty string is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, CycleParseError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = alloc::vec![false; degree];
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(CycleParseError::Unexpected(pos));
            }
            pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(CycleParseError::Unclosed);
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                if bytes[pos] == b',' && !cycle.is_empty() {
                    pos += 1;
                    continue;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(CycleParseError::Unexpected(pos));
                }
                let n: usize = core::str::from_utf8(&bytes[start..pos])
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .ok_or(CycleParseError::Unexpected(start))?;
                if n == 0 || n > degree {
                    return Err(CycleParseError::OutOfRange(n));
                }
                if touched[n - 1] {
                    return Err(CycleParseError::Repeated(n));
                }
                touched[n - 1] = true;
                cycle.push(n - 1);
            }
            for k in 0..cycle.len() {
                images[cycle[k]] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation::from_images(images).expect("disjoint cycles form a permutation"))
    }

    /// Smallest degree that fits every point named in `text`.
    pub fn max_point_in(text: &str) -> usize {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|s| s.parse::<usize>().ok())
            .max()
            .unwrap_or(0)
    }

    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for c in self.cycles() {
            s.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    s.push_str(", ");
                }
                use core::fmt::Write;
                let _ = write!(s, "{}", p + 1);
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleParseError {
    Unexpected(usize),
    Unclosed,
    OutOfRange(usize),
    Repeated(usize),
}

impl fmt::Display for CycleParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleParseError::Unexpected(at) => write!(f, "unexpected character at {at}"),
            CycleParseError::Unclosed => write!(f, "unclosed cycle"),
            CycleParseError::OutOfRange(n) => write!(f, "point {n} out of range"),
            CycleParseError::Repeated(n) => write!(f, "point {n} appears twice"),
        }
    }
}

impl core::error::Error for CycleParseError {}

pub(crate) fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_round_trip() {
        let text = "(2, 4, 8, 6, 3)(5, 10, 15, 13, 9)(11, 12, 18, 25, 17)(14, 20, 19, 24, 21)(16, 22, 26, 28, 23)";
        let p = Permutation::parse_cycles(text, 28).unwrap();
        assert_eq!(p.to_cycle_string(), text);
        assert_eq!(p.order(), 5);
        assert!(p.is_even());
        assert_eq!(p.apply(1), 3);
        assert_eq!(Permutation::max_point_in(text), 28);
    }

    #[test]
    fn cycle_parse_errors() {
        assert_eq!(Permutation::parse_cycles("(1,2", 3), Err(CycleParseError::Unclosed));
        assert_eq!(Permutation::parse_cycles("(1,4)", 3), Err(CycleParseError::OutOfRange(4)));
        assert_eq!(Permutation::parse_cycles("(1,2)(2,3)", 3), Err(CycleParseError::Repeated(2)));
        assert!(Permutation::parse_cycles("1,2", 3).is_err());
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse_cycles("(1,2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2,3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b).to_cycle_string(), "(1, 3, 2)");
        assert!(!a.commutes_with(&b));
        assert!(!a.is_even());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in perm_strategy(9)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.commutes_with(&p.then(&p)));
            let back = Permutation::parse_cycles(&p.to_cycle_string(), 9).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}

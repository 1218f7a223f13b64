//! Exact arithmetic in the dihedral group `D_2n = <α, β | α^n = β^2 = 1, βαβ = α^-1>`.
//!
//! Every element is stored in the normal form `β^e α^k` with `e ∈ {0, 1}` and
//! `0 <= k < n`. Products are read as words: `x * y` is the word `x` followed
//! by the word `y`, so that
//!
//! ```text
//! (β^e1 α^k1)(β^e2 α^k2) = β^(e1 xor e2) α^((-1)^e2 k1 + k2)
//! ```
//!
//! Cayley graph edges use left multiplication: `g` and `s * g` are adjacent.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("elements belong to different groups (n = {left} and n = {right})")]
    OrderMismatch { left: u32, right: u32 },
    #[error("invalid element token `{token}` for n = {n}")]
    BadToken { token: String, n: u32 },
    #[error("{0} does not generate the rotation subgroup")]
    NotARotationGenerator(GroupElement),
    #[error("{0} is a reflection, expected a rotation")]
    NotARotation(GroupElement),
}

/// An element `β^e α^k` of `D_2n`.
///
/// Field order matters for the derived `Ord`: within one group, rotations
/// `r0 < r1 < ... < r(n-1)` come before reflections `s0 < ... < s(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    n: u32,
    reflected: bool,
    exponent: u32,
}

impl GroupElement {
    /// `α^k`, with `k` reduced modulo `n`.
    pub fn rotation(n: u32, k: i64) -> Self {
        assert!(n >= 1, "dihedral group parameter must be positive");
        Self {
            n,
            reflected: false,
            exponent: k.rem_euclid(n as i64) as u32,
        }
    }

    /// `βα^k`, with `k` reduced modulo `n`.
    pub fn reflection(n: u32, k: i64) -> Self {
        assert!(n >= 1, "dihedral group parameter must be positive");
        Self {
            n,
            reflected: true,
            exponent: k.rem_euclid(n as i64) as u32,
        }
    }

    pub fn identity(n: u32) -> Self {
        Self::rotation(n, 0)
    }

    /// The group parameter `n` (the group has order `2n`).
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_reflection(&self) -> bool {
        self.reflected
    }

    pub fn is_rotation(&self) -> bool {
        !self.reflected
    }

    pub fn is_identity(&self) -> bool {
        !self.reflected && self.exponent == 0
    }

    /// Position in the canonical vertex order `r0..r(n-1), s0..s(n-1)`.
    pub fn index(&self) -> usize {
        self.reflected as usize * self.n as usize + self.exponent as usize
    }

    /// Inverse of [`GroupElement::index`].
    pub fn from_index(n: u32, index: usize) -> Self {
        let n_usize = n as usize;
        assert!(index < 2 * n_usize, "vertex index {index} out of range for n = {n}");
        if index < n_usize {
            Self::rotation(n, index as i64)
        } else {
            Self::reflection(n, (index - n_usize) as i64)
        }
    }

    /// All `2n` elements in canonical order.
    pub fn all(n: u32) -> impl Iterator<Item = GroupElement> {
        (0..2 * n as usize).map(move |i| GroupElement::from_index(n, i))
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.n != other.n {
            return Err(GroupError::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n as u64;
        let left = if other.reflected {
            (n - self.exponent as u64) % n
        } else {
            self.exponent as u64
        };
        Ok(GroupElement {
            n: self.n,
            reflected: self.reflected ^ other.reflected,
            exponent: ((left + other.exponent as u64) % n) as u32,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        if self.reflected {
            *self
        } else {
            GroupElement::rotation(self.n, -(self.exponent as i64))
        }
    }

    pub fn pow(&self, e: u64) -> GroupElement {
        if self.reflected {
            if e.is_multiple_of(2) {
                GroupElement::identity(self.n)
            } else {
                *self
            }
        } else {
            let n = self.n as u64;
            let k = (self.exponent as u64 * (e % n)) % n;
            GroupElement::rotation(self.n, k as i64)
        }
    }

    /// Canonical representative of the inverse class `{x, x^-1}`.
    ///
    /// Reflections are involutions and represent themselves; a rotation class
    /// `{α^k, α^-k}` is represented by the exponent in `[0, n/2]`.
    pub fn class_representative(&self) -> GroupElement {
        if self.reflected {
            *self
        } else {
            let e = self.exponent.min(self.n - self.exponent);
            GroupElement::rotation(self.n, e as i64)
        }
    }

    /// Parses `r<k>` or `s<k>` with `0 <= k < n` written without leading
    /// zeros or sign.
    pub fn parse(token: &str, n: u32) -> Result<GroupElement, GroupError> {
        let bad = || GroupError::BadToken {
            token: token.to_string(),
            n,
        };
        if n == 0 {
            return Err(bad());
        }
        let (reflected, digits) = match token.as_bytes().first() {
            Some(b'r') => (false, &token[1..]),
            Some(b's') => (true, &token[1..]),
            _ => return Err(bad()),
        };
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || (digits.len() > 1 && digits.starts_with('0'))
        {
            return Err(bad());
        }
        let k: u32 = digits.parse().map_err(|_| bad())?;
        if k >= n {
            return Err(bad());
        }
        Ok(GroupElement {
            n,
            reflected,
            exponent: k,
        })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.reflected { 's' } else { 'r' };
        write!(f, "{tag}{}", self.exponent)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Panics if the operands belong to different groups; use
/// [`GroupElement::multiply`] for a checked product.
impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.multiply(&rhs).expect("product of elements from different dihedral groups")
    }
}

/// Whether `elements` generate all of `D_2n`.
///
/// Computes the closure of the identity under left multiplication by the
/// given elements. In a finite group this is exactly the generated subgroup.
///
/// # Panics
///
/// Panics if some element does not belong to `D_2n`.
pub fn generates(n: u32, elements: &[GroupElement]) -> bool {
    subgroup_order(n, elements) == 2 * n as usize
}

/// Order of the subgroup generated by `elements`.
pub fn subgroup_order(n: u32, elements: &[GroupElement]) -> usize {
    for g in elements {
        assert_eq!(g.n, n, "element {g} is not in D_{}", 2 * n);
    }
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut stack = vec![GroupElement::identity(n)];
    seen.insert(stack[0]);
    while let Some(g) = stack.pop() {
        for s in elements {
            let h = *s * g;
            if seen.insert(h) {
                stack.push(h);
            }
        }
    }
    seen.len()
}

/// Extended Euclid: returns `(g, x)` with `a x ≡ g (mod m)`.
fn ext_gcd(a: i64, m: i64) -> (i64, i64) {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r, old_s)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x) = ext_gcd((a % m) as i64, m as i64);
    (g == 1).then(|| x.rem_euclid(m as i64) as u64)
}

/// Discrete logarithm inside the rotation subgroup: the `e ∈ [0, n)` with
/// `base^e = target`.
///
/// `base` must generate `<α>`, i.e. be a rotation with exponent coprime to `n`.
pub fn rotation_log(base: &GroupElement, target: &GroupElement) -> Result<u32, GroupError> {
    if base.n != target.n {
        return Err(GroupError::OrderMismatch {
            left: base.n,
            right: target.n,
        });
    }
    if target.reflected {
        return Err(GroupError::NotARotation(*target));
    }
    if base.reflected {
        return Err(GroupError::NotARotationGenerator(*base));
    }
    let n = base.n as u64;
    let inv = mod_inverse(base.exponent as u64, n).ok_or(GroupError::NotARotationGenerator(*base))?;
    Ok(((target.exponent as u64 * inv) % n) as u32)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

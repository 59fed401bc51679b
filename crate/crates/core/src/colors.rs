//! Colors and color sets.
//!
//! Colors are small nonnegative integers; a list is a set of at most 16
//! colors packed into a bitmask. Random instances draw palettes from `{0..9}`
//! by default.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Color = u8;

pub const MAX_COLOR: Color = 15;

/// A set of colors, backed by a 16-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(pub u16);

impl ColorSet {
    pub fn empty() -> Self {
        ColorSet(0)
    }

    pub fn single(c: Color) -> Self {
        ColorSet(1 << c)
    }

    pub fn from_colors<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet(0);
        for c in iter {
            s.insert(c);
        }
        s
    }

    /// The full palette `{0, .., k-1}`.
    pub fn palette(k: usize) -> Self {
        assert!(k <= MAX_COLOR as usize + 1);
        ColorSet(if k == 16 { u16::MAX } else { (1u16 << k) - 1 })
    }

    pub fn insert(&mut self, c: Color) {
        debug_assert!(c <= MAX_COLOR);
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1 << c);
    }

    pub fn contains(self, c: Color) -> bool {
        c <= MAX_COLOR && self.0 >> c & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn minus(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn smallest(self) -> Option<Color> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Color)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        (0..=MAX_COLOR).filter(move |&c| self.contains(c))
    }
}

impl std::fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// Serialized as a sorted color array.
impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(deserializer)?;
        if v.iter().any(|&c| c > MAX_COLOR) {
            return Err(D::Error::custom("color out of range"));
        }
        Ok(ColorSet::from_colors(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let mut s = ColorSet::from_colors([2, 5, 7]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.smallest(), Some(2));
        assert!(s.contains(5));
        s.remove(5);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![2, 7]);
        assert_eq!(s.minus(ColorSet::single(2)), ColorSet::single(7));
        assert_eq!(ColorSet::palette(3).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }
}

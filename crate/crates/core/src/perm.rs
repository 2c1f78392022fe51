//! The symmetric group S3 and its S2 cosets.

use std::fmt;

/// A permutation of {1,2,3}, stored by its images.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermS3 {
    images: [u8; 3],
}

impl PermS3 {
    pub const ID: PermS3 = PermS3 { images: [1, 2, 3] };
    pub const T12: PermS3 = PermS3 { images: [2, 1, 3] };
    pub const T13: PermS3 = PermS3 { images: [3, 2, 1] };
    pub const T23: PermS3 = PermS3 { images: [1, 3, 2] };
    pub const C123: PermS3 = PermS3 { images: [2, 3, 1] };
    pub const C132: PermS3 = PermS3 { images: [3, 1, 2] };

    /// Left coset representatives of S2 = <(12)>, in basis order.
    pub const COSET_REPS: [PermS3; 3] = [Self::ID, Self::C123, Self::C132];

    pub const ALL: [PermS3; 6] = [Self::ID, Self::T12, Self::T13, Self::T23, Self::C123, Self::C132];

    pub fn new(images: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &x in &images {
            if !(1..=3).contains(&x) || seen[(x - 1) as usize] {
                return None;
            }
            seen[(x - 1) as usize] = true;
        }
        Some(PermS3 { images })
    }

    pub fn images(self) -> [u8; 3] {
        self.images
    }

    /// Image of `x` (1-based).
    pub fn apply(self, x: u8) -> u8 {
        self.images[(x - 1) as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: PermS3) -> PermS3 {
        PermS3 { images: other.images.map(|x| self.apply(x)) }
    }

    pub fn inverse(self) -> PermS3 {
        let mut inv = [0u8; 3];
        for (i, &x) in self.images.iter().enumerate() {
            inv[(x - 1) as usize] = i as u8 + 1;
        }
        PermS3 { images: inv }
    }

    pub fn sign(self) -> i64 {
        let [a, b, c] = self.images;
        let inversions = (a > b) as u8 + (a > c) as u8 + (b > c) as u8;
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Position of this permutation in `COSET_REPS`, if it is one.
    pub fn coset_index(self) -> Option<usize> {
        Self::COSET_REPS.iter().position(|&r| r == self)
    }
}

/// Split `pi = rep ∘ tail` with `rep` a coset representative and
/// `tail ∈ {id, (12)}`.
pub fn coset_decompose(pi: PermS3) -> (PermS3, PermS3) {
    // tail fixes 3, so rep(3) = pi(3) pins the representative
    let rep = match pi.apply(3) {
        3 => PermS3::ID,
        1 => PermS3::C123,
        _ => PermS3::C132,
    };
    (rep, rep.inverse().compose(pi))
}

impl fmt::Display for PermS3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match *self {
            PermS3::ID => "id",
            PermS3::T12 => "(12)",
            PermS3::T13 => "(13)",
            PermS3::T23 => "(23)",
            PermS3::C123 => "(123)",
            _ => "(132)",
        };
        f.write_str(s)
    }
}

impl fmt::Debug for PermS3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

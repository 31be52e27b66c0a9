use num_traits::Float;

use crate::{Error, Result};

/// A spin-`j` irreducible sector, stored as the integer `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpinSector {
    twice_j: u32,
}

impl SpinSector {
    pub const fn from_twice_j(twice_j: u32) -> Self {
        Self { twice_j }
    }

    /// Sector of `j` given as a float; rejects values that are not
    /// non-negative half-integers.
    pub fn from_j(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !(twice >= 0.0) || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(Error::InvalidArgument(alloc::format!(
                "j = {j} is not a non-negative half-integer"
            )));
        }
        Ok(Self::from_twice_j(twice as u32))
    }

    /// Fully symmetric sector of `n` spin-1/2 particles, `j = n/2`.
    pub const fn symmetric(n_particles: u32) -> Self {
        Self::from_twice_j(n_particles)
    }

    pub const fn twice_j(&self) -> u32 {
        self.twice_j
    }

    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub const fn dim(&self) -> usize {
        self.twice_j as usize + 1
    }

    pub const fn is_integer(&self) -> bool {
        self.twice_j % 2 == 0
    }

    /// `m` value of basis index `i`.
    #[inline]
    pub fn m(&self, index: usize) -> f64 {
        (self.twice_j as f64 - 2.0 * index as f64) / 2.0
    }

    /// `j(j+1)`.
    pub fn casimir(&self) -> f64 {
        let j = self.j();
        j * (j + 1.0)
    }

    /// `⟨m+1| j₊ |m⟩ = √((j−m)(j+m+1))`.
    #[inline]
    pub fn raising(&self, m: f64) -> f64 {
        let j = self.j();
        ((j - m) * (j + m + 1.0)).max(0.0).sqrt()
    }
}

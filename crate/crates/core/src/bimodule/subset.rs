use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::FiniteBimodule;
use crate::error::{AlgebraError, Result};
use crate::ring::FiniteRing;

/// Which carrier a subset lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parent {
    Ring,
    Module,
}

/// Closure property claimed (and verified) for a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    LeftIdeal,
    RightIdeal,
    Ideal,
    LeftSubmodule,
    RightSubmodule,
    SubBimodule,
}

/// Which side a scalar acts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A subset of ring or module elements, closed under the operations its role names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetHandle {
    parent: Parent,
    role: Role,
    members: FixedBitSet,
}

impl SubsetHandle {
    pub fn in_ring(ring: &FiniteRing, role: Role, members: FixedBitSet) -> Result<Self> {
        let ok = match role {
            Role::LeftIdeal => ring.is_left_ideal(&members),
            Role::RightIdeal => ring.is_right_ideal(&members),
            Role::Ideal => ring.is_two_sided_ideal(&members),
            _ => return Err(AlgebraError::Precondition(format!("{role:?} is not a ring role"))),
        };
        if !ok {
            return Err(AlgebraError::NotClosed(format!("{role:?}")));
        }
        Ok(SubsetHandle {
            parent: Parent::Ring,
            role,
            members,
        })
    }

    pub fn in_module(module: &FiniteBimodule, role: Role, members: FixedBitSet) -> Result<Self> {
        let ok = match role {
            Role::LeftSubmodule => module.is_submodule(&members, Some(Side::Left)),
            Role::RightSubmodule => module.is_submodule(&members, Some(Side::Right)),
            Role::SubBimodule => module.is_submodule(&members, None),
            _ => return Err(AlgebraError::Precondition(format!("{role:?} is not a module role"))),
        };
        if !ok {
            return Err(AlgebraError::NotClosed(format!("{role:?}")));
        }
        Ok(SubsetHandle {
            parent: Parent::Module,
            role,
            members,
        })
    }

    pub fn parent(&self) -> Parent {
        self.parent
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn into_bits(self) -> FixedBitSet {
        self.members
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Set equality regardless of the role tag.
    pub fn same_set(&self, other: &SubsetHandle) -> bool {
        self.members == other.members
    }

    pub fn is_subset(&self, other: &SubsetHandle) -> bool {
        self.members.is_subset(&other.members)
    }
}

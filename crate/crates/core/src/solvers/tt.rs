use crate::engine::{Move, StateHash};

/// Number of slots used by default: 2^20 - 1.
pub const DEFAULT_TT_BITS: u32 = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TtEntry {
    pub key: u64,
    /// [`crate::GameState::full_key`] of the stored state. Differs from
    /// `key` only for Go, where it also covers the superko history.
    pub full: u64,
    /// Proven value when `exact`, otherwise the bound returned by the search.
    pub value: i8,
    pub exact: bool,
    pub best: Option<Move>,
    pub depth: u16,
}

/// Fixed-size, always-replace table indexed by `hash mod size`.
#[derive(Clone, Debug)]
pub struct SolverTable {
    slots: Vec<Option<TtEntry>>,
}

impl SolverTable {
    /// `2^bits - 1` slots; `bits = 0` disables the table.
    pub fn with_bits(bits: u32) -> SolverTable {
        assert!(bits <= 32, "table too large");
        SolverTable::with_size((1usize << bits) - 1)
    }

    pub fn with_size(size: usize) -> SolverTable {
        SolverTable { slots: vec![None; size] }
    }

    pub fn size(&self) -> usize {
        self.slots.len()
    }

    #[inline]
    fn slot(&self, hash: StateHash) -> Option<usize> {
        if self.slots.is_empty() {
            None
        } else {
            Some((hash.0 % self.slots.len() as u64) as usize)
        }
    }

    #[inline]
    pub fn probe(&self, hash: StateHash) -> Option<&TtEntry> {
        let i = self.slot(hash)?;
        self.slots[i].as_ref().filter(|e| e.key == hash.0)
    }

    #[inline]
    pub fn store(&mut self, entry: TtEntry) {
        if let Some(i) = self.slot(StateHash(entry.key)) {
            self.slots[i] = Some(entry);
        }
    }

    pub fn occupied(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }
}

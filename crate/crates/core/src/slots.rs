//! Words with open slots, shared by the two insertion procedures
//! (`Φ_FV⁻¹` labels slots from the right, `Φ_SZ⁻¹` from the left).

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Slot,
    Letter(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct SlotWord {
    cells: Vec<Cell>,
    slots: usize,
}

impl SlotWord {
    /// A word consisting of a single open slot.
    pub(crate) fn new(capacity: usize) -> Self {
        let mut cells = Vec::with_capacity(2 * capacity + 1);
        cells.push(Cell::Slot);
        SlotWord { cells, slots: 1 }
    }

    /// Replaces the slot with `from_left` slots strictly to its left by
    /// `[slot] letter [slot]`, keeping the slots that are requested.
    pub(crate) fn insert_from_left(
        &mut self,
        from_left: usize,
        letter: usize,
        slot_left: bool,
        slot_right: bool,
    ) {
        assert!(
            from_left < self.slots,
            "slot {from_left} requested but only {} open",
            self.slots
        );
        let at = self
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Cell::Slot)
            .nth(from_left)
            .map(|(i, _)| i)
            .expect("slot exists");
        let mut piece = Vec::with_capacity(3);
        if slot_left {
            piece.push(Cell::Slot);
        }
        piece.push(Cell::Letter(letter));
        if slot_right {
            piece.push(Cell::Slot);
        }
        self.slots = self.slots - 1 + usize::from(slot_left) + usize::from(slot_right);
        self.cells.splice(at..=at, piece);
    }

    /// Same as [`insert_from_left`](Self::insert_from_left) with slots
    /// labelled right to left starting at 0.
    pub(crate) fn insert_from_right(
        &mut self,
        from_right: usize,
        letter: usize,
        slot_left: bool,
        slot_right: bool,
    ) {
        assert!(
            from_right < self.slots,
            "slot {from_right} requested but only {} open",
            self.slots
        );
        self.insert_from_left(self.slots - 1 - from_right, letter, slot_left, slot_right);
    }

    /// The letters of a word that ends in exactly one open slot.
    pub(crate) fn finish(self) -> Vec<usize> {
        assert_eq!(self.slots, 1, "word must end with a single open slot");
        assert_eq!(self.cells.last(), Some(&Cell::Slot), "the open slot must be last");
        self.cells
            .into_iter()
            .filter_map(|c| match c {
                Cell::Letter(v) => Some(v),
                Cell::Slot => None,
            })
            .collect()
    }
}

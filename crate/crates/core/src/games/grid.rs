/// Rectangular board geometry over a single `u64`, cell index `y * width + x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    width: u8,
    height: u8,
    full: u64,
    /// Cells with `x != 0`.
    not_left: u64,
    /// Cells with `x != width - 1`.
    not_right: u64,
}

impl Grid {
    pub fn new(width: usize, height: usize) -> Grid {
        debug_assert!(width >= 1 && height >= 1 && width * height <= 64);
        let cells = width * height;
        let full = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
        let mut left_col = 0u64;
        let mut right_col = 0u64;
        for y in 0..height {
            left_col |= 1 << (y * width);
            right_col |= 1 << (y * width + width - 1);
        }
        Grid {
            width: width as u8,
            height: height as u8,
            full,
            not_left: full & !left_col,
            not_right: full & !right_col,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height as usize
    }

    #[inline]
    pub fn cells(&self) -> usize {
        self.width() * self.height()
    }

    #[inline]
    pub fn full(&self) -> u64 {
        self.full
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width() + x
    }

    #[inline]
    pub fn coords(&self, cell: usize) -> (usize, usize) {
        (cell % self.width(), cell / self.width())
    }

    #[inline]
    pub fn contains(&self, x: isize, y: isize) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width() && (y as usize) < self.height()
    }

    /// Cells one row up (`y + 1`).
    #[inline]
    pub fn shift_up(&self, b: u64) -> u64 {
        if self.width() >= 64 {
            0
        } else {
            (b << self.width) & self.full
        }
    }

    /// Cells one row down (`y - 1`).
    #[inline]
    pub fn shift_down(&self, b: u64) -> u64 {
        if self.width() >= 64 {
            0
        } else {
            b >> self.width
        }
    }

    /// Cells one column right (`x + 1`).
    #[inline]
    pub fn shift_right(&self, b: u64) -> u64 {
        (b & self.not_right) << 1
    }

    /// Cells one column left (`x - 1`).
    #[inline]
    pub fn shift_left(&self, b: u64) -> u64 {
        (b & self.not_left) >> 1
    }

    /// Orthogonal neighbours of every cell in `b`.
    #[inline]
    pub fn neighbors(&self, b: u64) -> u64 {
        self.shift_up(b) | self.shift_down(b) | self.shift_left(b) | self.shift_right(b)
    }

    /// Connected component of `seed` inside `within`.
    #[inline]
    pub fn flood(&self, seed: u64, within: u64) -> u64 {
        let mut region = seed & within;
        loop {
            let next = (region | self.neighbors(region)) & within;
            if next == region {
                return region;
            }
            region = next;
        }
    }

    /// Orthogonal neighbours of `cell` in up, down, left, right order; `None` off-board.
    pub fn adjacent(&self, cell: usize) -> [Option<usize>; 4] {
        let (x, y) = self.coords(cell);
        let w = self.width();
        [
            (y + 1 < self.height()).then(|| cell + w),
            (y > 0).then(|| cell - w),
            (x > 0).then(|| cell - 1),
            (x + 1 < w).then(|| cell + 1),
        ]
    }

    /// Row mask for `y`.
    pub fn row(&self, y: usize) -> u64 {
        let w = self.width();
        let row = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
        row << (y * w)
    }
}

#[inline]
pub(crate) fn bits(mut b: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if b == 0 {
            None
        } else {
            let c = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(c)
        }
    })
}

//! Transcribed pre-addition layers.
//!
//! Each layer maps the previous state `S(k-1)` to `S(k)`; node `j` of layer
//! `k` produces `S_j(k)`. Indices refer to the previous layer's state.

use super::KernelId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Copy(usize),
    Sum(usize, usize),
    Diff(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layer {
    pub nodes: &'static [Node],
}

impl Layer {
    /// Index pairs that are combined into a `(sum, difference)` butterfly.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .filter_map(|n| match *n {
                Node::Sum(a, b) => Some((a, b)),
                _ => None,
            })
            .collect()
    }

    /// Real additions/subtractions spent on this layer (copies are free).
    pub fn additions(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| !matches!(n, Node::Copy(_)))
            .count()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

use Node::{Copy as C, Diff as D, Sum as S};

const N8_L1: Layer = Layer {
    nodes: &[
        S(0, 4),
        D(0, 4),
        S(2, 6),
        D(2, 6),
        S(1, 5),
        D(1, 5),
        S(3, 7),
        D(3, 7),
    ],
};
const N8_L2: Layer = Layer {
    nodes: &[C(0), C(1), C(2), C(3), S(4, 6), D(4, 6), S(5, 7), D(5, 7)],
};

const N12_L1: Layer = Layer {
    nodes: &[
        S(0, 6),
        D(0, 6),
        S(3, 9),
        D(3, 9),
        S(1, 7),
        D(1, 7),
        S(2, 8),
        D(2, 8),
        S(4, 10),
        D(4, 10),
        S(5, 11),
        D(5, 11),
    ],
};
const N12_L2: Layer = Layer {
    nodes: &[
        C(0),
        C(1),
        C(2),
        C(3),
        S(4, 8),
        D(4, 8),
        S(5, 7),
        D(5, 7),
        S(6, 10),
        D(6, 10),
        S(9, 11),
        D(9, 11),
    ],
};
const N12_L3: Layer = Layer {
    nodes: &[
        C(0),
        C(1),
        C(2),
        C(3),
        S(4, 8),
        D(4, 8),
        S(5, 9),
        D(5, 9),
        S(7, 10),
        D(7, 10),
        S(6, 11),
        D(6, 11),
    ],
};

const N24_L1: Layer = Layer {
    nodes: &[
        S(0, 12),
        D(0, 12),
        S(1, 13),
        D(1, 13),
        S(2, 14),
        D(2, 14),
        S(3, 15),
        D(3, 15),
        S(4, 16),
        D(4, 16),
        S(5, 17),
        D(5, 17),
        S(6, 18),
        D(6, 18),
        S(7, 19),
        D(7, 19),
        S(8, 20),
        D(8, 20),
        S(9, 21),
        D(9, 21),
        S(10, 22),
        D(10, 22),
        S(11, 23),
        D(11, 23),
    ],
};
const N24_L2: Layer = Layer {
    nodes: &[
        C(0),
        C(1),
        C(12),
        C(13),
        S(2, 14),
        D(2, 14),
        S(3, 11),
        D(3, 11),
        S(4, 16),
        D(4, 16),
        S(5, 9),
        D(5, 9),
        S(8, 20),
        D(8, 20),
        S(10, 22),
        D(10, 22),
        S(15, 23),
        D(15, 23),
        S(17, 21),
        D(17, 21),
        S(6, 18),
        D(6, 18),
        S(7, 19),
        D(7, 19),
    ],
};
const N24_L3: Layer = Layer {
    nodes: &[
        C(0),
        C(1),
        C(2),
        C(3),
        C(20),
        C(21),
        S(4, 12),
        D(4, 12),
        S(5, 9),
        D(5, 9),
        S(8, 14),
        D(8, 14),
        S(13, 15),
        D(13, 15),
        S(22, 23),
        D(22, 23),
        S(10, 19),
        D(10, 19),
        S(11, 18),
        D(11, 18),
        C(6),
        C(7),
        C(16),
        C(17),
    ],
};
const N24_L4: Layer = Layer {
    nodes: &[
        C(0),
        C(1),
        C(2),
        C(3),
        C(4),
        C(5),
        C(17),
        C(18),
        S(6, 10),
        S(8, 13),
        D(8, 13),
        D(6, 10),
        S(9, 12),
        S(7, 11),
        D(7, 11),
        D(9, 12),
        S(14, 23),
        D(14, 23),
        S(15, 21),
        D(15, 21),
        C(16),
        C(19),
        C(20),
        C(22),
    ],
};

/// All transcribed layers for a kernel, layer 1 first.
pub fn layers(id: KernelId) -> &'static [Layer] {
    match id {
        KernelId::N4 => &[],
        KernelId::N8 => &[N8_L1, N8_L2],
        KernelId::N12 => &[N12_L1, N12_L2, N12_L3],
        KernelId::N24 => &[N24_L1, N24_L2, N24_L3, N24_L4],
    }
}

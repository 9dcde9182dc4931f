//! Expected values transcribed from the published tables.

/// One conjugacy class of the Weyl group: smallest-index representative,
/// element order, class size and torus stabilizer.
#[derive(Debug, Clone, Copy)]
pub struct ClassRow {
    pub rep: u32,
    pub order: u32,
    pub size: usize,
    pub stabilizer: &'static str,
}

const fn class(rep: u32, order: u32, size: usize, stabilizer: &'static str) -> ClassRow {
    ClassRow { rep, order, size, stabilizer }
}

pub const INNER_CLASSES: [ClassRow; 25] = [
    class(40843, 1, 1, "(F*)^6"),
    class(19, 2, 270, "(F*)^4"),
    class(21, 2, 540, "(F*)^3"),
    class(96, 2, 45, "(F*)^2 x Z2^2"),
    class(11323, 2, 36, "(F*)^5"),
    class(2, 4, 3240, "(F*)^2"),
    class(20, 4, 1620, "(F*)^3"),
    class(75, 4, 540, "F* x Z2^2"),
    class(140, 4, 540, "(F*)^2"),
    class(1, 8, 6480, "F*"),
    class(292, 3, 480, "(F*)^2 x Z3"),
    class(3819, 3, 80, "Z3^3"),
    class(4079, 3, 240, "(F*)^4"),
    class(5, 6, 1440, "(F*)^3"),
    class(15, 6, 2160, "(F*)^2"),
    class(22, 6, 1440, "(F*)^2"),
    class(122, 6, 4320, "F* x Z3"),
    class(124, 6, 720, "Z3"),
    class(195, 6, 1440, "Z3 x Z2^2"),
    class(435, 6, 1440, "F* x Z3"),
    class(121, 9, 5760, "Z3"),
    class(4, 12, 4320, "F*"),
    class(218, 12, 4320, "Z3"),
    class(3, 5, 5184, "(F*)^2"),
    class(135, 10, 5184, "F*"),
];

/// Outer classes of 2-power order: name, order and torus stabilizer.
pub const OUTER_CLASSES: [(&str, u32, &str); 10] = [
    ("eta1", 2, "(F*)^4"),
    ("eta2", 2, "(F*)^3"),
    ("eta3", 2, "(F*)^2 x Z2^2"),
    ("eta4", 2, "F* x Z2^4"),
    ("eta5", 2, "Z2^6"),
    ("mu1", 4, "(F*)^2"),
    ("mu2", 4, "(F*)^3"),
    ("mu3", 4, "F* x Z2^2"),
    ("mu4", 4, "Z4^2"),
    ("nu", 8, "F*"),
];

/// Inner automorphism classes by Kac coordinates `(p0, …, p6)` in this
/// crate's node labelling, with the dimension of the fixed subalgebra.
pub const KAC_CLASSES: [(&str, [u32; 7], usize); 7] = [
    ("3B", [0, 0, 0, 0, 0, 1, 1], 36),
    ("3C", [0, 0, 0, 0, 1, 0, 0], 24),
    ("3D", [1, 1, 0, 0, 0, 0, 1], 30),
    ("3E", [1, 0, 0, 1, 0, 0, 0], 28),
    ("3F", [2, 1, 0, 0, 0, 0, 0], 46),
    ("2A", [0, 0, 0, 1, 0, 0, 0], 38),
    ("2B", [1, 1, 0, 0, 0, 0, 0], 46),
];

/// Gradings of `sp(8)` by the seven symplectic quasitori.
pub const SP_TYPES: [(usize, &[usize]); 7] = [
    (1, &[32, 0, 0, 1]),
    (2, &[28, 4]),
    (3, &[27, 0, 3]),
    (4, &[24, 0, 0, 3]),
    (5, &[24, 6]),
    (6, &[36]),
    (7, &[36]),
];

/// Gradings of the 42-dimensional module, including the parity automorphism.
pub const MODULE_TYPES: [(usize, &[usize]); 4] = [(2, &[32, 3, 0, 1]), (5, &[24, 7, 0, 1]), (6, &[37, 0, 0, 0, 1]), (7, &[36, 0, 0, 0, 0, 1])];

/// Minimized lift orders.
pub const LIFT_ORDERS: [(&str, u32); 7] = [("eta1", 2), ("eta2", 2), ("eta3", 2), ("eta4", 2), ("eta5", 2), ("mu4", 4), ("3819", 3)];

#[cfg(test)]
mod tests {
    use super::*;
    use e6core::smith::AbelianGroup;

    #[test]
    fn class_sizes_sum_to_the_group_order() {
        assert_eq!(INNER_CLASSES.iter().map(|c| c.size).sum::<usize>(), 51840);
    }

    #[test]
    fn every_stabilizer_parses() {
        for c in INNER_CLASSES {
            assert!(AbelianGroup::parse(c.stabilizer).is_some(), "{}", c.stabilizer);
        }
        for (name, _, s) in OUTER_CLASSES {
            assert!(AbelianGroup::parse(s).is_some(), "{name}");
        }
    }

    #[test]
    fn kac_coordinates_give_the_stated_orders() {
        let marks = [1, 1, 2, 2, 3, 2, 1];
        for (label, coords, _) in KAC_CLASSES {
            let order: u32 = coords.iter().zip(marks).map(|(p, m)| p * m).sum();
            assert_eq!(order.to_string(), label[..1], "{label}");
        }
    }
}

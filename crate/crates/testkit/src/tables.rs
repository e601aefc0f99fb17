//! Published coefficient arrays and closed forms.

use signed_grid::polynomial::{parse_rational, rational};
use signed_grid::Polynomial;

/// Coefficients of the prefix-reversal polynomials `R_{≤k}`, `k = 1..=10`,
/// in ascending degree.
pub const PANCAKE: [&[&str]; 10] = [
    &["1", "1"],
    &["1", "0", "1"],
    &["1", "1", "-1", "1"],
    &["1", "-1/2", "3", "-5/2", "1"],
    &["1", "1/2", "-25/6", "17/2", "-29/6", "1"],
    &["1", "299/30", "-5", "-73/4", "21", "-463/60", "1"],
    &[
        "1",
        "-3529/30",
        "24697/120",
        "-3167/48",
        "-889/16",
        "3569/80",
        "-2699/240",
        "1",
    ],
    &[
        "1",
        "92843/84",
        "-48217/20",
        "1230329/720",
        "-7787/24",
        "-2659/18",
        "10117/120",
        "-77323/5040",
        "1",
    ],
    &[
        "1",
        "-1713461/168",
        "28102741/1120",
        "-3620111/160",
        "52327853/5760",
        "-13571/12",
        "-997679/2880",
        "163277/1120",
        "-806941/40320",
        "1",
    ],
    &[
        "1",
        "29555642/315",
        "-1264975307/5040",
        "11803588051/45360",
        "-77767535/576",
        "307180691/8640",
        "-4420823/1440",
        "-22399579/30240",
        "948575/4032",
        "-4576633/181440",
        "1",
    ],
];

/// Coefficients of the block-reversal polynomials `P_{≤k}`, `k = 1..=5`.
pub const REVERSAL: [&[&str]; 5] = [
    &["1", "1/2", "1/2"],
    &["1", "1/3", "1/3", "1/6", "1/6"],
    &["1", "1/3", "35/72", "7/48", "-5/144", "1/48", "7/144"],
    &[
        "1", "131/420", "617/1260", "-1/120", "67/1440", "53/240", "-17/360", "-41/1680", "37/3360",
    ],
    &[
        "1",
        "331/2520",
        "24727/50400",
        "4703/22680",
        "16945/72576",
        "931/17280",
        "-20059/86400",
        "7267/60480",
        "145/24192",
        "-925/72576",
        "3767/1814400",
    ],
];

pub fn from_array(coeffs: &[&str]) -> Polynomial {
    Polynomial::new(
        coeffs
            .iter()
            .map(|c| parse_rational(c).expect("table entry"))
            .collect(),
    )
}

/// `R_{≤k}` for `1 ≤ k ≤ 10`.
pub fn pancake(k: usize) -> Polynomial {
    from_array(PANCAKE[k - 1])
}

/// `P_{≤k}` for `1 ≤ k ≤ 5`.
pub fn reversal(k: usize) -> Polynomial {
    from_array(REVERSAL[k - 1])
}

fn product(factors: &[Polynomial]) -> Polynomial {
    factors.iter().fold(Polynomial::one(), |acc, f| &acc * f)
}

fn ascending(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_integers(coeffs)
}

/// Closed form of `R_{≤k} − R_{≤k−1}` for `4 ≤ k ≤ 9`, expanded.
///
/// For `k = 4` this is `½·n·(n−1)²(2n−3)`, the form the arrays give.
pub fn pancake_exact_factored(k: usize) -> Polynomial {
    let n = Polynomial::variable();
    let r = Polynomial::linear_root;
    let (scale, factors) = match k {
        4 => (rational(1, 2), vec![n, r(1), r(1), ascending(&[-3, 2])]),
        5 => (rational(1, 6), vec![n, r(1), r(2), ascending(&[3, -17, 6])]),
        6 => (
            rational(1, 60),
            vec![n, r(1), r(2), ascending(&[284, 401, -343, 60])],
        ),
        7 => (
            rational(1, 240),
            vec![n, r(1), r(2), r(3), ascending(&[5104, 925, -1499, 240])],
        ),
        8 => (
            rational(1, 5040),
            vec![
                n,
                r(1),
                r(2),
                r(3),
                ascending(&[-1027242, 314716, 113415, -52123, 5040]),
            ],
        ),
        9 => (
            rational(1, 40320),
            vec![
                r(1),
                r(2),
                r(3),
                r(4),
                ascending(&[0, -18991470, 6638777, 644746, -444061, 40320]),
            ],
        ),
        _ => panic!("no closed form for k = {k}"),
    };
    product(&factors).scale(&scale)
}

/// `½·(n−1)²(2n−3)`, the `k = 4` form without the leading factor `n`.
pub fn pancake_exact_4_without_n() -> Polynomial {
    let r = Polynomial::linear_root;
    product(&[r(1), r(1), ascending(&[-3, 2])]).scale(&rational(1, 2))
}

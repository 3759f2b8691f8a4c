//! Reference values of π_n(nz − β/2) for c = 0.5, β = 1.5, n = 100, as printed
//! to six significant digits, with the formula used for each point.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub z: &'static str,
    pub true_value: &'static str,
    pub approx_value: &'static str,
    pub formula: &'static str,
}

pub const C: &str = "0.5";
pub const BETA: &str = "1.5";
pub const N: u32 = 100;

pub const ROWS: [TableRow; 10] = [
    row("-1", "1.99529e233", "1.99473e233", "O4"),
    row("-0.001", "8.36624e187", "8.35137e187", "O0l"),
    row("0.001", "3.07930e187", "3.07272e187", "O0r"),
    row("0.05", "-2.51701e180", "-2.51507e180", "O1"),
    row("0.171", "-9.12697e174", "-9.12530e174", "Oa"),
    row("0.172", "-1.22035e175", "-1.22003e175", "Oa"),
    row("2", "-4.71541e201", "-4.70772e201", "O3"),
    row("5.828", "2.78146e259", "2.78231e259", "Ob"),
    row("5.829", "2.86933e259", "2.87018e259", "Ob"),
    row("100", "2.16586e399", "2.16586e399", "O4"),
];

const fn row(
    z: &'static str,
    true_value: &'static str,
    approx_value: &'static str,
    formula: &'static str,
) -> TableRow {
    TableRow {
        z,
        true_value,
        approx_value,
        formula,
    }
}

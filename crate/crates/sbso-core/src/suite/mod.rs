//! The Hedar test set: 35 rows over 32 function families, 68 bound-constrained
//! problem instances with known minimal values (16 unimodal, 52 multimodal).

mod functions;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::str::FromStr;

use crate::problem::{Objective, Problem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown function family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` does not support dimension {dim}")]
    UnsupportedDimension { family: Family, dim: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Unimodal,
    Multimodal,
}

impl core::fmt::Display for Characteristic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Characteristic::Unimodal => f.write_str("unimodal"),
            Characteristic::Multimodal => f.write_str("multimodal"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Hedar,
    HedarUnimodal,
    HedarMultimodal,
}

impl FromStr for SuiteId {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hedar" => Ok(SuiteId::Hedar),
            "hedar-unimodal" => Ok(SuiteId::HedarUnimodal),
            "hedar-multimodal" => Ok(SuiteId::HedarMultimodal),
            other => Err(SuiteError::UnknownSuite(other.into())),
        }
    }
}

impl core::fmt::Display for SuiteId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SuiteId::Hedar => f.write_str("hedar"),
            SuiteId::HedarUnimodal => f.write_str("hedar-unimodal"),
            SuiteId::HedarMultimodal => f.write_str("hedar-multimodal"),
        }
    }
}

macro_rules! families {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// Function family identifier.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Family {
            $($variant),+
        }

        impl Family {
            pub fn name(self) -> &'static str {
                match self {
                    $(Family::$variant => $name),+
                }
            }
        }

        impl FromStr for Family {
            type Err = SuiteError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(Family::$variant),)+
                    other => Err(SuiteError::UnknownFamily(other.into())),
                }
            }
        }
    };
}

families! {
    Beale => "beale",
    Matyas => "matyas",
    Sphere => "sphere",
    SumSquares => "sumsquares",
    Trid => "trid",
    Zakharov => "zakharov",
    Ackley => "ackley",
    Bohachevsky1 => "bohachevsky1",
    Bohachevsky2 => "bohachevsky2",
    Bohachevsky3 => "bohachevsky3",
    Booth => "booth",
    Branin => "branin",
    Colville => "colville",
    DixonPrice => "dixonprice",
    Easom => "easom",
    GoldsteinPrice => "goldsteinprice",
    Griewank => "griewank",
    Hartman3 => "hartman3",
    Hartman6 => "hartman6",
    Hump => "hump",
    Levy => "levy",
    Michalewicz => "michalewicz",
    Perm => "perm",
    Powell => "powell",
    PowerSum => "powersum",
    Rastrigin => "rastrigin",
    Rosenbrock => "rosenbrock",
    Schwefel => "schwefel",
    Shekel5 => "shekel5",
    Shekel7 => "shekel7",
    Shekel10 => "shekel10",
    Shubert => "shubert",
}

impl core::fmt::Display for Family {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// One table row: a family at a fixed list of dimensions sharing one search
/// region and minimal value.
struct Row {
    family: Family,
    dims: &'static [usize],
    characteristic: Characteristic,
    lower: f64,
    upper: f64,
    f_min: f64,
}

// Minimal value notes:
// - trid at n = 10 has the canonical minimum -210 (= -n(n+4)(n-1)/6) at
//   x_i = i(n+1-i); the suite stores the canonical value.
// - michalewicz minima are stored to the full numerically refined precision;
//   the tabulated short forms are prefixes of these values.
const ROWS: &[Row] = &[
    Row { family: Family::Beale, dims: &[2], characteristic: Characteristic::Unimodal, lower: -4.5, upper: 4.5, f_min: 0.0 },
    Row { family: Family::Matyas, dims: &[2], characteristic: Characteristic::Unimodal, lower: -8.0, upper: 12.5, f_min: 0.0 },
    Row { family: Family::Sphere, dims: &[2, 5, 10, 20], characteristic: Characteristic::Unimodal, lower: -4.1, upper: 6.4, f_min: 0.0 },
    Row { family: Family::SumSquares, dims: &[2, 5, 10, 20], characteristic: Characteristic::Unimodal, lower: -8.0, upper: 12.5, f_min: 0.0 },
    Row { family: Family::Trid, dims: &[6], characteristic: Characteristic::Unimodal, lower: -36.0, upper: 36.0, f_min: -50.0 },
    Row { family: Family::Trid, dims: &[10], characteristic: Characteristic::Unimodal, lower: -100.0, upper: 100.0, f_min: -210.0 },
    Row { family: Family::Zakharov, dims: &[2, 5, 10, 20], characteristic: Characteristic::Unimodal, lower: -5.0, upper: 10.0, f_min: 0.0 },
    Row { family: Family::Ackley, dims: &[2, 5, 10, 20], characteristic: Characteristic::Multimodal, lower: -15.0, upper: 30.0, f_min: 0.0 },
    Row { family: Family::Bohachevsky1, dims: &[2], characteristic: Characteristic::Multimodal, lower: -80.0, upper: 125.0, f_min: 0.0 },
    Row { family: Family::Bohachevsky2, dims: &[2], characteristic: Characteristic::Multimodal, lower: -80.0, upper: 125.0, f_min: 0.0 },
    Row { family: Family::Bohachevsky3, dims: &[2], characteristic: Characteristic::Multimodal, lower: -80.0, upper: 125.0, f_min: 0.0 },
    Row { family: Family::Booth, dims: &[2], characteristic: Characteristic::Multimodal, lower: -100.0, upper: 100.0, f_min: 0.0 },
    Row { family: Family::Branin, dims: &[2], characteristic: Characteristic::Multimodal, lower: f64::NAN, upper: f64::NAN, f_min: 0.397887357729739 },
    Row { family: Family::Colville, dims: &[4], characteristic: Characteristic::Multimodal, lower: -10.0, upper: 10.0, f_min: 0.0 },
    Row { family: Family::DixonPrice, dims: &[2, 5, 10, 20], characteristic: Characteristic::Multimodal, lower: -10.0, upper: 10.0, f_min: 0.0 },
    Row { family: Family::Easom, dims: &[2], characteristic: Characteristic::Multimodal, lower: -100.0, upper: 100.0, f_min: -1.0 },
    Row { family: Family::GoldsteinPrice, dims: &[2], characteristic: Characteristic::Multimodal, lower: -2.0, upper: 2.0, f_min: 3.0 },
    Row { family: Family::Griewank, dims: &[2, 5, 10, 20], characteristic: Characteristic::Multimodal, lower: -480.0, upper: 750.0, f_min: 0.0 },
    Row { family: Family::Hartman3, dims: &[3], characteristic: Characteristic::Multimodal, lower: 0.0, upper: 1.0, f_min: -3.86278214782076 },
    Row { family: Family::Hartman6, dims: &[6], characteristic: Characteristic::Multimodal, lower: 0.0, upper: 1.0, f_min: -3.32236801141551 },
    Row { family: Family::Hump, dims: &[2], characteristic: Characteristic::Multimodal, lower: -5.0, upper: 5.0, f_min: 0.0 },
    Row { family: Family::Levy, dims: &[2, 5, 10, 20], characteristic: Characteristic::Multimodal, lower: -10.0, upper: 10.0, f_min: 0.0 },
    Row { family: Family::Michalewicz, dims: &[2], characteristic: Characteristic::Multimodal, lower: 0.0, upper: PI, f_min: -1.80130341008983 },
    Row { family: Family::Michalewicz, dims: &[5], characteristic: Characteristic::Multimodal, lower: 0.0, upper: PI, f_min: -4.687658179088151 },
    Row { family: Family::Michalewicz, dims: &[10], characteristic: Characteristic::Multimodal, lower: 0.0, upper: PI, f_min: -9.660151715641346 },
    Row { family: Family::Perm, dims: &[4], characteristic: Characteristic::Multimodal, lower: -4.0, upper: 4.0, f_min: 0.0 },
    Row { family: Family::Powell, dims: &[4, 12, 24, 48], characteristic: Characteristic::Multimodal, lower: -4.0, upper: 5.0, f_min: 0.0 },
    Row { family: Family::PowerSum, dims: &[4], characteristic: Characteristic::Multimodal, lower: 0.0, upper: 4.0, f_min: 0.0 },
    Row { family: Family::Rastrigin, dims: &[2, 5, 10, 20], characteristic: Characteristic::Multimodal, lower: -4.1, upper: 6.4, f_min: 0.0 },
    Row { family: Family::Rosenbrock, dims: &[2, 5, 10, 20], characteristic: Characteristic::Multimodal, lower: -5.0, upper: 10.0, f_min: 0.0 },
    Row { family: Family::Schwefel, dims: &[2, 5, 10, 20], characteristic: Characteristic::Multimodal, lower: -500.0, upper: 500.0, f_min: 0.0 },
    Row { family: Family::Shekel5, dims: &[4], characteristic: Characteristic::Multimodal, lower: 0.0, upper: 10.0, f_min: -10.1531996790582 },
    Row { family: Family::Shekel7, dims: &[4], characteristic: Characteristic::Multimodal, lower: 0.0, upper: 10.0, f_min: -10.4029405668187 },
    Row { family: Family::Shekel10, dims: &[4], characteristic: Characteristic::Multimodal, lower: 0.0, upper: 10.0, f_min: -10.5364098166920 },
    Row { family: Family::Shubert, dims: &[2], characteristic: Characteristic::Multimodal, lower: -10.0, upper: 10.0, f_min: -186.730908831024 },
];

fn objective_of(family: Family) -> Objective {
    match family {
        Family::Beale => functions::beale,
        Family::Matyas => functions::matyas,
        Family::Sphere => functions::sphere,
        Family::SumSquares => functions::sum_squares,
        Family::Trid => functions::trid,
        Family::Zakharov => functions::zakharov,
        Family::Ackley => functions::ackley,
        Family::Bohachevsky1 => functions::bohachevsky1,
        Family::Bohachevsky2 => functions::bohachevsky2,
        Family::Bohachevsky3 => functions::bohachevsky3,
        Family::Booth => functions::booth,
        Family::Branin => functions::branin,
        Family::Colville => functions::colville,
        Family::DixonPrice => functions::dixon_price,
        Family::Easom => functions::easom,
        Family::GoldsteinPrice => functions::goldstein_price,
        Family::Griewank => functions::griewank,
        Family::Hartman3 => functions::hartman3,
        Family::Hartman6 => functions::hartman6,
        Family::Hump => functions::hump,
        Family::Levy => functions::levy,
        Family::Michalewicz => functions::michalewicz,
        Family::Perm => functions::perm,
        Family::Powell => functions::powell,
        Family::PowerSum => functions::power_sum,
        Family::Rastrigin => functions::rastrigin,
        Family::Rosenbrock => functions::rosenbrock,
        Family::Schwefel => functions::schwefel,
        Family::Shekel5 => functions::shekel5,
        Family::Shekel7 => functions::shekel7,
        Family::Shekel10 => functions::shekel10,
        Family::Shubert => functions::shubert,
    }
}

fn bounds_of(row: &Row, dim: usize) -> (Vec<f64>, Vec<f64>) {
    if row.family == Family::Branin {
        // Table prints the asymmetric box [-5, 10] x [0, 15].
        (vec![-5.0, 0.0], vec![10.0, 15.0])
    } else {
        (vec![row.lower; dim], vec![row.upper; dim])
    }
}

/// One suite instance: a family at one dimension.
#[derive(Debug, Clone)]
pub struct SuiteEntry {
    pub family: Family,
    pub dim: usize,
    pub characteristic: Characteristic,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub f_min: f64,
}

impl SuiteEntry {
    /// Instance name, e.g. `sphere-10`.
    pub fn name(&self) -> String {
        format!("{}-{}", self.family, self.dim)
    }

    pub fn problem(&self) -> Problem {
        make_problem(self.family, self.dim).expect("suite entries are valid rows")
    }
}

/// A minimizer of the instance, usable as ground truth in tests and for
/// verifying reported accuracies. Closed-form where one exists; otherwise
/// numerically refined coordinates (cyclic coordinate descent to ~1e-12).
pub fn known_minimizer(family: Family, dim: usize) -> Result<Vec<f64>, SuiteError> {
    if !ROWS
        .iter()
        .any(|r| r.family == family && r.dims.contains(&dim))
    {
        return Err(SuiteError::UnsupportedDimension { family, dim });
    }
    Ok(match (family, dim) {
        (Family::Beale, _) => vec![3.0, 0.5],
        (Family::Matyas, _)
        | (Family::Sphere, _)
        | (Family::SumSquares, _)
        | (Family::Zakharov, _)
        | (Family::Ackley, _)
        | (Family::Bohachevsky1, _)
        | (Family::Bohachevsky2, _)
        | (Family::Bohachevsky3, _)
        | (Family::Griewank, _)
        | (Family::Powell, _)
        | (Family::Rastrigin, _) => vec![0.0; dim],
        (Family::Trid, n) => (1..=n).map(|i| (i * (n + 1 - i)) as f64).collect(),
        (Family::Booth, _) => vec![1.0, 3.0],
        (Family::Branin, _) => vec![PI, 2.275],
        (Family::Colville, _) | (Family::Levy, _) | (Family::Rosenbrock, _) => vec![1.0; dim],
        (Family::DixonPrice, n) => (1..=n)
            .map(|i| {
                let p = (1u64 << i) as f64;
                libm::pow(2.0, -(p - 2.0) / p)
            })
            .collect(),
        (Family::Easom, _) => vec![PI, PI],
        (Family::GoldsteinPrice, _) => vec![0.0, -1.0],
        (Family::Hartman3, _) => vec![0.1146143745645195, 0.555648857049865, 0.8525469578171452],
        (Family::Hartman6, _) => vec![
            0.20168951685172098,
            0.15001070092499025,
            0.47687397776986973,
            0.27533243486804193,
            0.3116516194463538,
            0.6573005369617853,
        ],
        (Family::Hump, _) => vec![0.08984202214166911, -0.7126564025754756],
        (Family::Michalewicz, 2) => vec![2.202905516022436, 1.5707963320632525],
        (Family::Michalewicz, 5) => vec![
            2.202905516022436,
            1.5707963320632525,
            1.2849915705907602,
            1.92305847012369,
            1.720469772879147,
        ],
        (Family::Michalewicz, _) => vec![
            2.202905516022436,
            1.5707963320632525,
            1.2849915705907602,
            1.92305847012369,
            1.720469772879147,
            1.5707963285510154,
            1.4544139708687598,
            1.7560865212282595,
            1.6557174161217985,
            1.570796327848568,
        ],
        (Family::Perm, _) => vec![1.0, 2.0, 3.0, 4.0],
        (Family::PowerSum, _) => vec![1.0, 2.0, 2.0, 3.0],
        (Family::Schwefel, n) => vec![420.96874635887673; n],
        (Family::Shekel5, _) => vec![
            4.000037158105842,
            4.000133277987068,
            4.000037159199108,
            4.0001332834233345,
        ],
        (Family::Shekel7, _) => vec![
            4.000572919409752,
            4.000689369375207,
            3.9994897118276427,
            3.999606165470494,
        ],
        (Family::Shekel10, _) => vec![
            4.000746535997692,
            4.0005929407097405,
            3.9996634006905563,
            3.999509803979918,
        ],
        (Family::Shubert, _) => vec![-7.708313729045051, 5.482864207969858],
    })
}

/// Build the problem for one table row.
pub fn make_problem(family: Family, dim: usize) -> Result<Problem, SuiteError> {
    let row = ROWS
        .iter()
        .find(|r| r.family == family && r.dims.contains(&dim))
        .ok_or(SuiteError::UnsupportedDimension { family, dim })?;
    let (lower, upper) = bounds_of(row, dim);
    let problem = Problem::new(
        format!("{}-{}", family, dim),
        lower,
        upper,
        row.f_min,
        objective_of(family),
    )
    .expect("suite rows define valid boxes");
    Ok(problem)
}

/// Enumerate a suite in table-row order, dimension ascending within a row.
pub fn list_suite(suite: SuiteId) -> Vec<SuiteEntry> {
    ROWS.iter()
        .flat_map(|row| {
            row.dims.iter().map(move |&dim| {
                let (lower, upper) = bounds_of(row, dim);
                SuiteEntry {
                    family: row.family,
                    dim,
                    characteristic: row.characteristic,
                    lower,
                    upper,
                    f_min: row.f_min,
                }
            })
        })
        .filter(|e| match suite {
            SuiteId::Hedar => true,
            SuiteId::HedarUnimodal => e.characteristic == Characteristic::Unimodal,
            SuiteId::HedarMultimodal => e.characteristic == Characteristic::Multimodal,
        })
        .collect()
}

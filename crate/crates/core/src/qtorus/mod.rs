//! The quantum torus `Z[t^±]<L^±, M^±>/(LM - t^2 ML)`, localized at
//! polynomials in `t` and `M`, acting on sequences by `(Mf)(n) = t^{2n} f(n)`
//! and `(Lf)(n) = f(n+1)`.

mod annihilation;
mod operator;
mod sequence;

pub use annihilation::{apply_operator, check_annihilation, AnnihilationReport, ApplyError};
pub use operator::SkewOperator;
pub use sequence::{DiscreteSequence, FnSequence, MemoSequence};

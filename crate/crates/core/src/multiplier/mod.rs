//! Mihlin-type spectral multipliers `m(√L)`: symbol checks, application
//! through the frame expansion, and boundedness measurements.

mod apply;
mod mihlin;
mod symbol;

pub use apply::{apply_multiplier, boundedness_report, multiplied_frame, MultiplierBoundedness, ROUTE_TOL};
pub use mihlin::{ahlfors_width, check_mihlin, mihlin_threshold, MihlinSymbol, GRID_POINTS, WIDE_FACTOR};
pub use symbol::{parse_expr, Expr, Func, Symbol, BUILTINS};

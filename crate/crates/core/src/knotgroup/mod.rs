//! Words in the free group on `a, b`, integral group-ring elements, the
//! presentation `<a, b | w^n a = b w^n>` of J(2m,2n) and Fox calculus.

mod fox;
mod group_ring;
mod word;

pub use fox::{eval_word, fox_derivative, phi_eval, Presentation, PreciseImages};
pub use group_ring::{geometric_sum, GroupRingElement};
pub use word::{build_word_w, exponent_sum, reverse_word, Generator, Letter, Word};

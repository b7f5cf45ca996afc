//! Lexicographic order on words and the width of each length slice of a regular language.

mod brute;
mod exact;
mod order;

pub use brute::{dilworth, enumerate_level, width_bruteforce, width_certificate, DilworthCertificate, DEFAULT_WORD_CAP};
pub use exact::{exact_width, exact_width_with_budget, WidthEngine, DEFAULT_STATE_BUDGET};
pub use order::{is_antichain, is_input_deterministic, lex_compare, LetterPoset, LexOutcome};

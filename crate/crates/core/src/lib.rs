//! Exact min-plus matrix algebra, the semidirect-product key exchange built on
//! it, and a binary-search attack that recovers the shared key from a
//! transcript.
//!
//! ```
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha8Rng;
//! use tropkex::{recover_key, run_exchange, ProtocolParams, SemigroupOpKind};
//!
//! let mut rng = ChaCha8Rng::seed_from_u64(7);
//! let params = ProtocolParams::setup(3, 100, 16, SemigroupOpKind::Circ, &mut rng).unwrap();
//! let exchange = run_exchange(params, &mut rng).unwrap();
//! let stolen = recover_key(&exchange.transcript).unwrap();
//! assert_eq!(&stolen.recovered_key, exchange.shared_key());
//! ```

pub mod attack;
pub mod bench;
pub mod cli;
mod error;
pub mod protocol;
pub mod semidirect;
pub mod tropical;

pub use attack::{recover_key, recover_key_targeting, AttackResult, Target};
pub use error::{Error, Result};
pub use protocol::{run_exchange, Exchange, PartyState, ProtocolParams, Transcript};
pub use semidirect::{power, OpCounter, SemigroupOpKind, SemigroupPair, SquareCache};
pub use tropical::{ChainOrdering, TropicalMatrix, TropicalScalar};

use thiserror::Error;

use crate::factor::AtomCatalog;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order {0} exceeds the supported maximum of {max}", max = crate::group::MAX_ORDER)]
    OrderTooLarge(usize),

    #[error("invalid group family parameter: {0}")]
    Family(String),

    #[error("malformed Cayley table: {0}")]
    Table(String),

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("no element acts as a two-sided identity")]
    NoIdentity,

    #[error("not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("sequences live over different groups")]
    GroupMismatch,

    #[error("quotient undefined: the divisor is not a subsequence")]
    NotDivisible,

    #[error("resource budget exceeded: {attempted} states needed, budget is {budget}")]
    Budget { attempted: u64, budget: u64 },

    #[error("atom enumeration stopped early after {nodes} search nodes; catalog is not exhaustive")]
    Incomplete {
        nodes: u64,
        partial: Box<AtomCatalog>,
    },

    #[error("sequence is not product-one")]
    NotProductOne,

    #[error("atom catalog covers lengths up to {have}, but length {need} is required")]
    CatalogTooShort { have: usize, need: usize },

    #[error("map is not a bijection")]
    NotBijective,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("catalog cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by exhausting a configured budget rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Incomplete { .. })
    }
}

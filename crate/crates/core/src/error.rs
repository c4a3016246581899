use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("edge ({0}, {1}) references a node outside the graph")]
    NodeOutOfRange(usize, usize),
    #[error("node label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("a cut needs a nonempty proper subset of the nodes")]
    DegenerateCut,
    #[error("the target set must be a nonempty proper subset of the nodes")]
    DegenerateSet,
    #[error("unsmoothed VAT is undefined: the set leaves no nodes outside the largest component")]
    UndefinedUnsmoothed,
    #[error("set volume {volume} exceeds half the total volume {total}")]
    VolumeExceeded { volume: usize, total: usize },
    #[error("removing the set leaves fewer than two components")]
    NotACutSet,
    #[error("the graph has no vertex cut set")]
    NoCutSet,
    #[error("scattering number is -1, so 1/(sn+1) is undefined")]
    UndefinedH,
    #[error("no admissible target set exists for {0}")]
    NoValidSet(String),

    #[error("graph has {n} nodes, above the solver cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph has {0} nodes; at least 3 are required")]
    TooSmall(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree sequence is not graphical: {0}")]
    NonGraphical(String),
    #[error("could not realize the degree sequence as a simple graph after {0} attempts")]
    Unrealizable(usize),
    #[error("no disconnecting seed set found in {0} contraction draws")]
    SeedFailure(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

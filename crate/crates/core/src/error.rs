use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("triangle {triangle} side {side} is neither glued nor flagged as boundary")]
    DanglingSide { triangle: usize, side: usize },
    #[error("triangle {triangle} side {side} is used by more than one gluing")]
    SideReused { triangle: usize, side: usize },
    #[error("index out of range in gluing table: {0}")]
    BadIndex(String),
    #[error("corners identified by the gluings carry different marked points ({0} vs {1})")]
    InconsistentVertex(usize, usize),
    #[error("marked point {0} is split into several vertices")]
    SplitVertex(usize),
    #[error("Euler count V - E + F = {chi} is not realizable with {boundary} boundary circles")]
    EulerMismatch { chi: i64, boundary: usize },
    #[error("triangulation is disconnected")]
    Disconnected,
    #[error("edge {0} has both sides on the same triangle; itineraries would be ambiguous")]
    SelfAdjacentEdge(usize),
    #[error("shear parameters are incomplete at marked point {0}")]
    IncompleteShears(usize),
    #[error("unknown surface fixture `{0}`")]
    UnknownSurface(String),
    #[error("malformed itinerary: {0}")]
    MalformedItinerary(String),
    #[error("arcs live on different surfaces (`{0}` and `{1}`)")]
    SurfaceMismatch(String, String),
    #[error("arc is not simple")]
    NotSimple,
    #[error("arcs {0} and {1} intersect; expected a disjoint system")]
    NotDisjoint(usize, usize),
    #[error("inconsistent crossing layout: {0}")]
    Layout(String),
    #[error("system does not fill the surface: {0}")]
    NotFilling(String),
    #[error("formula domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

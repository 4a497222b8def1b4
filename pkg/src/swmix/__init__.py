"""Exact interval analyses of switched piecewise-affine systems.

The package builds and re-verifies finite certificates: hitting-time sets and
weak-mixing witnesses, scrambled-pair distance envelopes, staged point
steering, and spread tables over quantization nets, all in exact rational
arithmetic by default with an optional outward-rounded float mode.
"""

from .chaos import (
    DistanceEnvelope,
    EnvelopeRow,
    ScrambledVerdict,
    XiongStage,
    XiongWitness,
    distance_envelope,
    scrambled_verdict,
    verify_envelope,
    verify_xiong,
    xiong_witness,
)
from .core import (
    AffinePiece,
    Numerics,
    PiecewiseAffineMap,
    SwitchedSystem,
    eval_interval,
    eval_point,
    image_of,
    itinerary_word,
    preimage,
    word_preimage,
)
from .errors import (
    BudgetExceeded,
    EmptyLanguage,
    EmptyRefinement,
    InadmissiblePair,
    InadmissibleSeeds,
    NotCovered,
    OutsidePartition,
    PreconditionFailed,
    ScenarioError,
    SwmixError,
    UndefinedAtPoint,
    UndefinedOnSet,
)
from .geometry import (
    CompactRep,
    hausdorff_distance,
    vietoris_member,
)
from .hitting import (
    HittingReport,
    HitWitness,
    WMCertificate,
    extend_witness,
    hitting_sets,
    maps_commute,
    order_reduction,
    pull_back_hit,
    verify_wm_certificate,
    wm_certificate,
)
from .intervals import Interval, IntervalSet
from .language import (
    Dfa,
    ForbiddenWords,
    FullShift,
    PrunedAutomaton,
    accepts_prefix,
    compile_language,
    count_words,
    enumerate_words,
)
from .search import SearchBudget
from .spread import (
    QNet,
    SpreadCertificate,
    SpreadChain,
    SpreadRow,
    build_qnet,
    certify_spread,
    chain_certify,
    restrict_certificate,
    verify_certificate,
    xiong_from_chain,
)
from .words import Word

__version__ = "0.1.0"

__all__ = [
    "AffinePiece",
    "BudgetExceeded",
    "CompactRep",
    "Dfa",
    "DistanceEnvelope",
    "EmptyLanguage",
    "EmptyRefinement",
    "EnvelopeRow",
    "ForbiddenWords",
    "FullShift",
    "HitWitness",
    "HittingReport",
    "InadmissiblePair",
    "InadmissibleSeeds",
    "Interval",
    "IntervalSet",
    "NotCovered",
    "Numerics",
    "OutsidePartition",
    "PiecewiseAffineMap",
    "PreconditionFailed",
    "PrunedAutomaton",
    "QNet",
    "ScenarioError",
    "ScrambledVerdict",
    "SearchBudget",
    "SpreadCertificate",
    "SpreadChain",
    "SpreadRow",
    "SwitchedSystem",
    "SwmixError",
    "UndefinedAtPoint",
    "UndefinedOnSet",
    "WMCertificate",
    "Word",
    "XiongStage",
    "XiongWitness",
    "accepts_prefix",
    "build_qnet",
    "certify_spread",
    "chain_certify",
    "compile_language",
    "count_words",
    "distance_envelope",
    "enumerate_words",
    "eval_interval",
    "eval_point",
    "extend_witness",
    "hausdorff_distance",
    "hitting_sets",
    "image_of",
    "itinerary_word",
    "maps_commute",
    "order_reduction",
    "preimage",
    "pull_back_hit",
    "restrict_certificate",
    "scrambled_verdict",
    "verify_certificate",
    "verify_envelope",
    "verify_wm_certificate",
    "verify_xiong",
    "vietoris_member",
    "wm_certificate",
    "word_preimage",
    "xiong_from_chain",
    "xiong_witness",
]

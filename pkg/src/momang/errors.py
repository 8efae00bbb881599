"""Exception types shared across the package."""


class MomangError(Exception):
    """Base class for all structured errors raised by this package."""


class ParseError(MomangError):
    """Input file or raw data does not match the expected wire format."""


class BadParameters(MomangError):
    """Generator or command was invoked with unusable parameters."""


class GuardExceeded(MomangError):
    """A combinatorial size guard was hit before the computation started."""


# -- polytope validation -----------------------------------------------------

class InvalidPolytope(MomangError):
    """Base class for incidence data that fails validation."""


class NotSimple(InvalidPolytope):
    """Some vertex lies in a number of facets different from the dimension."""


class DuplicateVertex(InvalidPolytope):
    """Two vertices carry identical facet sets."""


class UnusedFacet(InvalidPolytope):
    """A facet index appears in no vertex."""


class NotPolytopal(InvalidPolytope):
    """The 3-dimensional incidence fails the Steinitz-type graph checks."""


class InvalidSphere(MomangError):
    """A facet list does not describe a closed simplicial sphere."""


# -- half-space presentations ------------------------------------------------

class HRepError(MomangError):
    """Base class for defective half-space presentations."""


class RankDeficient(HRepError):
    """The normal matrix does not have full rank."""


class Unbounded(HRepError):
    """The inward normals do not positively span the ambient space."""


class EmptyInterior(HRepError):
    """The feasible region has no interior point."""


class RedundantHalfspace(HRepError):
    """Dropping the half-space does not change the feasible region."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"half-space {index} is redundant")


class NotSimplePresentation(HRepError):
    """Some vertex of the region lies on more than n bounding hyperplanes."""


class OutsidePolytope(HRepError):
    """The point to lift violates one of the defining inequalities."""


class NotOnVariety(HRepError):
    """The point does not satisfy the quadric system within tolerance."""


# -- moves ---------------------------------------------------------------------

class NoSuchVertex(MomangError):
    """Vertex index out of range."""


class NoSuchFacet(MomangError):
    """Facet index out of range."""


class NotSimplexFacet(MomangError):
    """The facet is not a combinatorial simplex, so it cannot be collapsed."""


class CollapseInadmissible(MomangError):
    """Collapsing the facet would not produce a simple polytope."""


class IsSimplex(MomangError):
    """The polytope already is a simplex; nothing left to collapse."""


class DimensionUnsupported(MomangError):
    """The operation is only defined for 3-dimensional polytopes."""


class NotAFace(MomangError):
    """The given vertex set is not a face of the simplicial sphere."""


class LinkNotStandard(MomangError):
    """The face's link is not the boundary of a complementary simplex."""

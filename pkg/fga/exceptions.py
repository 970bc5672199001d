"""Exceptions used by the growth toolkit."""


class WordParsingException(Exception):
    """
    Text could not be parsed into a word, an automorphism or a poset.
    See :mod:`fga.parse`.
    """

    pass


class RankMismatchException(Exception):
    """
    Operands live in free groups of different ranks, or a generator index is out of range.
    """

    pass


class InvalidAutomorphismException(Exception):
    """
    Generator images do not define an automorphism: the abelianized matrix does not have
    determinant ±1, or an attached inverse does not compose to the identity.
    """

    pass


class InvalidCertificateException(Exception):
    """
    Exact length computation was requested with a certificate that does not hold.
    See :func:`fga.engine.exact_lengths`.
    """

    pass


class GrowthClassificationException(Exception):
    """
    A length sequence is too short or too irregular to be classified.
    """

    pass


class TrivialSubjectException(Exception):
    """
    Growth was requested for the trivial element or the trivial conjugacy class.
    """

    pass


class PosetCycleException(Exception):
    """
    The declared inclusion order between laminations contains a cycle.
    """

    pass


class InadmissibleInvariantsException(Exception):
    """
    The pair (e, d) lies outside the admissible region for the given rank.
    """

    pass


class SearchBudgetException(Exception):
    """
    A bounded search exceeded its resource cap.
    """

    pass

import pytest

from mkfuzzy import ONE, TruthValue
from mkfuzzy.mkauto import MkAutomaton, const_automaton

K1 = TruthValue("3/10", "1/5", "2/5", "1/10")
K2 = TruthValue("9/10", "1/20", "3/100", "1/50")


def two_automaton():
    """States p < q; in(p) = ONE, ter = ONE; p -a-> p (K1), p -a-> q (K2), q -a-> q (ONE)."""
    return MkAutomaton(
        ["p", "q"], ["a"], {"p": ONE},
        {("p", "a", "p"): K1, ("p", "a", "q"): K2, ("q", "a", "q"): ONE},
        {"p": ONE, "q": ONE},
    )


@pytest.fixture
def k1():
    return K1


@pytest.fixture
def k2():
    return K2


@pytest.fixture
def two():
    return two_automaton()


@pytest.fixture
def const_k1():
    return const_automaton(K1, ["a", "b"])

import pytest
from hypothesis import settings, strategies as st

from tmdyn.corpus import CORPUS
from tmdyn.tm_core import Configuration, Tape

REACHABLE = """\
states q0 q1 h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> q1 0 S
trans q0 1 -> q1 1 S
trans q1 0 -> q0 0 S
trans q1 1 -> h 1 S
"""

MERGING = """\
states q0 a h
alphabet 0 1
blank 0
initial q0
halting h
trans q0 0 -> a 0 S
trans q0 1 -> a 1 S
trans a 0 -> h 0 S
trans a 1 -> h 0 S
"""


settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def tapes(alphabet=("0", "1"), blank="0", radius=6):
    cells = st.dictionaries(st.integers(-radius, radius), st.sampled_from(tuple(alphabet)), max_size=2 * radius + 1)
    return cells.map(lambda c: Tape.from_cells(c, blank))


def configurations(machine, radius=5):
    return st.builds(
        Configuration,
        st.sampled_from(machine.active_states()),
        tapes(machine.alphabet, machine.blank, radius),
    )


@pytest.fixture(params=[e.name for e in CORPUS])
def corpus_entry(request):
    return next(e for e in CORPUS if e.name == request.param)

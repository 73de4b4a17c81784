import os

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# moduli with a handful of small prime factors
MODULI = [2, 3, 4, 6, 8, 9, 12, 15, 30, 36, 60, 72, 90, 120, 180, 210, 360]


@st.composite
def zmod_rings(draw, moduli=MODULI):
    from forster_forge.rings import ZMod

    return ZMod(draw(st.sampled_from(moduli)))


@st.composite
def matrices(draw, ring, rows, cols):
    from forster_forge.linalg import ExactMatrix

    n = ring.modulus
    data = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return ExactMatrix(ring, data, cols)


@st.composite
def modules_over_zmod(draw, max_ambient=4, max_relators=4, moduli=MODULI):
    from forster_forge.modules import ModulePresentation

    ring = draw(zmod_rings(moduli))
    t = draw(st.integers(1, max_ambient))
    k = draw(st.integers(0, max_relators))
    if k == 0:
        return ModulePresentation(ring, t)
    return ModulePresentation(ring, t, draw(matrices(ring, t, k)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import itertools
import json
import random

import pytest

from lingrowth.automaton import (
    FitDefect,
    FitFailure,
    FitResult,
    NormalWordFamily,
    RationalSeries,
    Verdict,
    attach_sml,
    build_automaton,
    certify,
    certify_words,
    denominator_divides,
    fit_families,
    generating_function,
    rational_guess,
)
from lingrowth.exactfield import FieldDescriptor
from lingrowth.ncgroebner import truncated_groebner
from lingrowth.presentation import (
    HilbertData,
    build_vlrs,
    family_fermat,
    family_lech,
    family_segment,
    hilbert_closed,
)
from lingrowth.recurrence import SMLSet

F11 = FieldDescriptor.prime_field(11)


def fam(prefix, loop, suffix, sml):
    w = lambda s: tuple(s)  # noqa: E731
    return NormalWordFamily(w(prefix), w(loop), w(suffix), sml, (len(prefix), len(loop), len(suffix)))


def by_degree(words, N):
    out = [[] for _ in range(N + 1)]
    for w in words:
        if len(w) <= N:
            out[len(w)].append(tuple(w))
    return out


def test_fit_single_family():
    ws = by_degree(["c" * n + "b" for n in range(12)], 12)
    r = fit_families(ws)
    assert isinstance(r, FitResult) and r.residue == ()
    (f,) = r.families
    assert (f.prefix, f.loop, f.suffix) == ((), ("c",), ("b",))
    assert attach_sml(f).exponents == SMLSet((), ((0, 1),))
    assert r.regenerate() == ws


def test_fit_l1_shape():
    m, N = 3, 20
    xs = [f"x{i}" for i in range(1, m + 1)]
    words = []
    for n in range(N):
        words += [("c",) * (n + 3), ("a",) + ("c",) * (n + 2), ("c",) * (n + 2) + ("b",),
                  ("a",) + ("c",) * (n + 1) + ("b",)]
        words += [("c",) * (n + 2) + (x,) for x in xs]
    r = fit_families(by_degree(words, N))
    assert len(r.families) == 4 + m
    assert {f.loop for f in r.families} == {("c",)}
    assert r.regenerate() == [sorted(lv) for lv in by_degree(words, N)]
    auto = build_automaton([attach_sml(f) for f in r.families], r.residue, horizon=N)
    assert generating_function(auto).coefficients(N + 1) == [len(lv) for lv in by_degree(words, N)]


def test_fit_primitive_loops():
    ws = by_degree(["a" + "bc" * n for n in range(10)], 20)
    r = fit_families(ws)
    assert {f.loop for f in r.families} == {("b", "c")}
    with pytest.raises(ValueError):
        fam("", "cc", "", SMLSet())


def test_fit_failure_is_a_value():
    ws = [[w for w in itertools.product("uv", repeat=d)] for d in range(9)]
    r = fit_families(ws)
    assert isinstance(r, FitFailure) and not r
    assert certify_words(ws).verdict is Verdict.FIT_FAILED
    with pytest.raises(ValueError):
        fit_families(ws, min_evidence=2)


def test_attach_sml_examples():
    f = fam("a", "c", "b", ())
    bits = tuple(n % 10 == 2 for n in range(38))
    f = NormalWordFamily(f.prefix, f.loop, f.suffix, tuple(n for n in range(38) if bits[n]), f.degrees, bits)
    assert attach_sml(f).exponents == SMLSet((), ((2, 10),))
    bits = tuple(n in (1, 7, 49) for n in range(58))
    f = NormalWordFamily(f.prefix, f.loop, f.suffix, (1, 7, 49), f.degrees, bits)
    assert not attach_sml(f).determined


def test_single_loop_automaton():
    auto = build_automaton([fam("", "c", "", SMLSet((), ((0, 1),)))])
    assert auto.n_states == 1 and auto.accepting == {0}
    assert generating_function(auto) == RationalSeries((1,), (1, -1))


def test_even_loop_series():
    auto = build_automaton([fam("a", "c", "b", SMLSet((), ((0, 2),)))])
    assert generating_function(auto) == RationalSeries((0, 0, 1), (1, 0, -1))


def test_progression_automaton_structure():
    auto = build_automaton([fam("a", "c", "b", SMLSet((), ((2, 10),)))])
    # start, a 10-cycle of c-states (the two warm-up states merge into it), final
    assert auto.n_states == 12
    assert auto.accepts(("a",) + ("c",) * 12 + ("b",))
    assert not auto.accepts(("a",) + ("c",) * 11 + ("b",))
    counts = auto.count_by_degree(40)
    assert counts == [int(d >= 4 and (d - 4) % 10 == 0) for d in range(41)]
    assert denominator_divides(generating_function(auto), [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1])


def test_shared_spine():
    fams = [fam("", "c", s, SMLSet((), ((0, 1),))) for s in ("x", "y", "b")]
    auto = build_automaton(fams)
    assert auto.n_states == 2


def test_overlap_defect():
    fams = [fam("", "c", "b", SMLSet((), ((0, 1),))), fam("c", "c", "b", SMLSet((), ((0, 1),)))]
    with pytest.raises(FitDefect):
        build_automaton(fams, horizon=6)
    with pytest.raises(ValueError):
        build_automaton([fam("", "c", "", (1, 2))])


def deterministic_and_trim(auto):
    seen = set()
    for (q, x), t in auto.transitions.items():
        assert (q, x) not in seen
        seen.add((q, x))
    # every state reachable and co-reachable
    reach, stack = {0}, [0]
    while stack:
        q = stack.pop()
        for (p, _), t in auto.transitions.items():
            if p == q and t not in reach:
                reach.add(t)
                stack.append(t)
    assert reach == set(range(auto.n_states))
    for q in range(auto.n_states):
        live, stack = {q}, [q]
        while stack:
            s = stack.pop()
            for (p, _), t in auto.transitions.items():
                if p == s and t not in live:
                    live.add(t)
                    stack.append(t)
        assert live & auto.accepting


@pytest.mark.parametrize(
    "data,N",
    [(family_fermat(2, -1), 30), (family_segment(3, 2, F11), 40), (family_fermat(F11.from_int(3), F11.from_int(9), F11), 30)],
    ids=["fermat", "segment", "fermat-F11"],
)
def test_certified_pipelines(data, N):
    p = build_vlrs(data)
    gb = truncated_groebner(p, N=N)
    words = gb.normal_words()
    cert = certify_words(words, weights=p.weights)
    assert cert.verdict is Verdict.CERTIFIED
    assert cert.series.coefficients(N + 1) == [len(lv) for lv in words] == list(hilbert_closed(data, N).values)
    assert cert.fit.regenerate(p.weights) == [sorted(lv) for lv in words]
    auto = cert.automaton
    deterministic_and_trim(auto)
    # acceptance soundness: exhaustive to degree 5, sampled above
    normal = {w for lv in words for w in lv}
    for d in range(6):
        for w in itertools.product(p.names, repeat=d):
            assert auto.accepts(w) == (w in normal)
    rng = random.Random(1)
    for _ in range(400):
        d = rng.randint(6, N)
        w = tuple(rng.choice(p.names) for _ in range(d)) if rng.random() < 0.5 else rng.choice(words[d])
        assert auto.accepts(w) == (w in normal)
    # the raw-letter expansion counts the same words
    raw = auto.expand_letters(p.weights)
    assert raw.count_by_degree(N) == cert.counts
    json.dumps(cert.to_json())
    assert auto.to_dot().startswith("digraph")


def test_fermat_series():
    cert = certify(build_vlrs(family_fermat(2, -1)), N=30)
    assert cert.series.coefficients(8) == [1, 6, 10, 10, 11, 10, 10, 10]
    assert denominator_divides(cert.series, [1, -1])


def test_lech_undetermined():
    cert = certify(build_vlrs(family_lech(7)), N=30)
    assert cert.verdict is Verdict.UNDETERMINED
    assert [f.observed for f in cert.offending] == [(1, 7)]
    assert "undetermined" in cert.to_json()


def test_rational_series_basics():
    s = RationalSeries.from_fractions((2, 4), (2, -2))
    assert s == RationalSeries((1, 2), (1, -1))
    assert s.coefficients(4) == [1, 3, 3, 3]
    with pytest.raises(ValueError):
        RationalSeries((1,), (2,))
    assert str(RationalSeries((0, 0, 1), (1, 0, -1))) == "(z^2) / (1 - z^2)"


def test_rational_guess_examples():
    fib = rational_guess([1, 1, 2, 3, 5, 8, 13, 21, 34, 55], 4)
    assert fib == RationalSeries((1,), (1, -1, -1))
    h = HilbertData(hilbert_closed(family_fermat(2, -1), 30).values, "closed")
    g = rational_guess(h, 10)
    assert g.den == (1, -1) and g.coefficients(31) == list(h.values)
    # polynomial part plus 10 z^3 / (1 - z)
    poly = [1, 6, 10]
    tail = [g.coefficients(31)[n] - (poly[n] if n < 3 else 0) for n in range(31)]
    assert tail[4] == 11 and tail[3:] == [10, 11] + [10] * 26
    assert rational_guess(hilbert_closed(family_lech(7), 62), 25) is None
    with pytest.raises(ValueError):
        rational_guess([1, 2, 3], 4)

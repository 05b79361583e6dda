import pytest

from conftest import C, P
from dualcx.certify import CHECKS, Certificate, certify, contradiction_chain, replay_certificate
from dualcx.curves import CurveConfig, forms_tree
from dualcx.generate import (
    MUTATION_CHECK,
    MUTATIONS,
    build_instance,
    family_a,
    family_b,
    make_rng,
    random_complex,
    random_tree_config,
)
from dualcx.homotopy import betti
from dualcx.loops import StrataLabeling


def test_same_seed_same_instance():
    a, b = family_a(make_rng(9)), family_a(make_rng(9))
    assert a.complex.to_json() == b.complex.to_json()
    assert a.labeling.to_json() == b.labeling.to_json()
    assert a.config.to_json() == b.config.to_json()


def test_tree_configs_are_trees():
    for seed in range(50):
        cfg = random_tree_config(make_rng(seed), 1 + seed % 5, seed % 3)
        assert forms_tree(cfg) and forms_tree(cfg, "exhaustive")


def test_random_complexes_are_small_and_valid():
    for seed in range(50):
        c = random_complex(make_rng(seed))
        assert len(c) <= 40 and c.is_valid


@pytest.mark.parametrize("seed", range(20))
def test_family_a_passes(seed):
    inst = family_a(make_rng(seed))
    cert = certify(inst.complex, inst.labeling)
    assert cert.verdict == "pass", cert.failures
    assert all(cert.checks[n]["status"] == "pass" for n in CHECKS)
    assert replay_certificate(cert, inst.complex, inst.labeling)


@pytest.mark.parametrize("mutation", MUTATIONS)
@pytest.mark.parametrize("seed", range(5))
def test_family_b_names_its_violation(mutation, seed):
    inst = family_b(make_rng(seed), mutation)
    cert = certify(inst.complex, inst.labeling)
    assert cert.verdict == "fail"
    assert cert.failures == [MUTATION_CHECK[mutation]]
    assert cert.violation == MUTATION_CHECK[mutation]
    assert replay_certificate(cert, inst.complex, inst.labeling)


def test_banana_over_two_components_fails_collapsibility(banana):
    cfg = CurveConfig(["C1", "C2"], {"P": ["C1", "C2"], "Q": ["C1", "C2"]})
    lab = StrataLabeling(banana, cfg, {0: C("C1"), 1: C("C2"), 2: P("P"), 3: P("Q")})
    cert = certify(banana, lab)
    assert cert.verdict == "fail" and cert.violation == "collapsibility"
    assert cert.checks["collapsibility"]["evidence"]["betti"] == list(betti(banana)) == [1, 1]
    assert replay_certificate(cert, banana, lab)
    # the chain gets as far as the loop and stops on homology
    assert cert.evidence["chain"]["stage"] == "reduce"


def test_budget_exhaustion_is_unknown():
    inst = family_a(make_rng(4), 3)
    cert = certify(inst.complex, inst.labeling, budget=1)
    assert cert.verdict == "unknown"
    assert cert.checks["collapsibility"]["status"] == "unknown"


def test_broken_complex_skips_everything():
    from dualcx.complex import DeltaComplex

    g = DeltaComplex([(0, 1, [])])
    cfg = CurveConfig(["C1"], {})
    cert = certify(g, StrataLabeling(g, cfg, {0: C("C1")}))
    assert cert.violation == "complex-valid"
    assert {cert.checks[n]["status"] for n in CHECKS[1:]} == {"skipped"}


def test_chain_on_non_tree_instance_stops_before_success(triangle_config):
    inst = build_instance(make_rng(1), triangle_config)
    cert = certify(inst.complex, inst.labeling)
    assert cert.violation == "collapsibility"
    chain = contradiction_chain(inst.complex, inst.labeling, None)
    assert chain["stage"] == "reduce" and "loop" in chain


def test_tampered_certificate_does_not_replay():
    inst = family_b(make_rng(0), "two-islands")
    cert = certify(inst.complex, inst.labeling)
    clean = family_a(make_rng(0))
    assert not replay_certificate(cert, clean.complex, clean.labeling)
    again = Certificate.from_dict(cert.to_dict())
    assert again.to_json() == cert.to_json()
    assert cert.to_dict()["schema_version"] == 1

import json

import pytest

from realcover.constructions import (
    ConstructionStep,
    GenericR0Pencil,
    Hyperelliptic,
    StepKind,
    Variant,
    execute,
)
from realcover.planner import (
    Infeasible,
    Plan,
    plan,
    plan_from_json,
    plan_to_json,
    verify_plan,
)
from realcover.topology import CoverSpec, CoverTarget, DegreeVector, TopType, enumerate_admissible


def spec(g, s, a, target, k, deg=()):
    return CoverSpec(TopType(g, s, a), CoverTarget(target), k, DegreeVector(tuple(deg)))


class TestDispatch:
    def test_all_unit_windings(self):
        target = spec(6, 3, 0, "P1", 3, (1, 1, 1))
        result = plan(target)
        assert result.provenance == "Case2-all1"
        assert result.seed == Hyperelliptic(TopType(5, 2, 0), DegreeVector((1, 1)))
        assert result.steps == (ConstructionStep(StepKind.III),)
        assert verify_plan(result, target)

    def test_genus_four_parity_infeasible(self):
        result = plan(spec(4, 0, 1, "P1", 3))
        assert result == Infeasible("parity")

    def test_conic_with_large_degree(self):
        g = 4
        result = plan(spec(g, 0, 1, "R0", g + 3))
        assert result.provenance == "R0-big-k"
        assert result.seed == GenericR0Pencil(g, g + 3)
        assert result.steps == ()

    def test_all_zero_windings_roundtrip(self):
        target = spec(5, 2, 0, "P1", 4, (0, 0))
        result = plan(target)
        assert result.provenance == "Case5"
        assert execute(result.seed, result.steps) == target

    def test_full_winding_on_one_circle(self):
        target = spec(4, 1, 0, "P1", 3, (3,))
        result = plan(target)
        assert result.provenance == "Case1"
        assert verify_plan(result, target)

    def test_degree_two_refused_even_when_admissible(self):
        result = plan(spec(1, 2, 0, "P1", 2, (1, 1)))
        assert isinstance(result, Infeasible)
        assert "k=2" in result.reason

    def test_every_branch_appears_in_the_box(self):
        tags = set()
        for target in enumerate_admissible(8, 6):
            if target.k == 2:
                continue
            result = plan(target)
            tags.add(result.provenance)
        assert tags == {
            "A1-sPos",
            "A1-s0-small-g",
            "A1-s0-big-g",
            "Case1",
            "Case2-all1",
            "Case2-big",
            "Case3",
            "Case4",
            "Case5",
            "R0-big-k",
            "R0-small-k",
        }


class TestBranchGuards:
    def test_all_unit_branch_parity(self):
        # the all-ones branch only fires when g and k+1 share parity and the
        # base genus g-k+2 is at least 1
        for target in enumerate_admissible(8, 6):
            if target.k == 2:
                continue
            result = plan(target)
            if result.provenance == "Case2-all1":
                g, k = target.top.g, target.k
                assert (g - k - 1) % 2 == 0
                assert g - k + 2 >= 1

    def test_prefixes_of_emitted_plans_execute(self):
        target = spec(7, 4, 0, "P1", 6, (2, 1, 1, 0))
        result = plan(target)
        assert isinstance(result, Plan)
        for i in range(len(result.steps) + 1):
            execute(result.seed, result.steps[:i])  # must not raise


class TestVerify:
    def test_deleting_a_step_breaks_verification(self):
        target = spec(6, 3, 0, "P1", 4, (2, 1, 1))
        result = plan(target)
        assert verify_plan(result, target)
        for i in range(len(result.steps)):
            mutated = Plan(
                result.seed, result.steps[:i] + result.steps[i + 1 :], result.provenance
            )
            assert not verify_plan(mutated, target)

    def test_mismatched_target_reports_a_trail(self):
        target = spec(6, 3, 0, "P1", 3, (1, 1, 1))
        result = plan(target)
        other = spec(6, 3, 0, "P1", 5, (1, 1, 1))
        trail = []
        assert not verify_plan(result, other, trail)
        assert trail and "executes to" in trail[0]

    def test_invalid_hand_built_plan(self):
        bad = Plan(
            Hyperelliptic(TopType(4, 1, 0), DegreeVector((2,))),
            (ConstructionStep(StepKind.II, Variant.WITH_REAL_RAM),),
            "Case5",
        )
        trail = []
        assert not verify_plan(bad, spec(5, 2, 0, "P1", 2, (2, 0)), trail)
        assert trail


class TestDeterminism:
    def test_plans_are_pure(self):
        target = spec(7, 4, 1, "P1", 6, (2, 1, 1, 0))
        assert plan(target) == plan(target)
        a = json.dumps(plan_to_json(plan(target)))
        b = json.dumps(plan_to_json(plan(target)))
        assert a == b

    def test_json_round_trip(self):
        for target in [
            spec(5, 2, 0, "P1", 4, (0, 0)),
            spec(6, 0, 1, "P1", 4),
            spec(3, 0, 1, "R0", 2),
            spec(4, 2, 1, "P1", 5, (1, 0)),
        ]:
            result = plan(target)
            assert isinstance(result, Plan)
            assert plan_from_json(plan_to_json(result)) == result

    def test_serialize_parse_verify_round_trip_over_box(self):
        for target in enumerate_admissible(4, 4):
            if target.k == 2:
                continue
            result = plan(target)
            reparsed = plan_from_json(json.loads(json.dumps(plan_to_json(result))))
            assert verify_plan(reparsed, target)

    def test_malformed_plan_documents(self):
        with pytest.raises(ValueError, match="provenance"):
            plan_from_json({"seed": {"kind": "GenericPencil", "g": 1, "k": 2}, "steps": []})
        with pytest.raises(ValueError, match="seed.kind"):
            plan_from_json({"seed": {"kind": "Nope"}, "steps": [], "provenance": "Case1"})
        with pytest.raises(ValueError, match="steps\\[0\\]"):
            plan_from_json(
                {
                    "seed": {"kind": "GenericPencil", "g": 1, "k": 2},
                    "steps": [{"kind": "VIII"}],
                    "provenance": "Case1",
                }
            )

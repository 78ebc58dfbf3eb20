"""Parser, grounder, and serializer for the PDDL subset."""

import pytest

from plantopo.errors import ParseError, UnsupportedFeature
from plantopo.generators import DOMAINS, GeneratorSpec, generate, pddl_texts
from plantopo.pddl import ground, parse_task, serialize

MINI_DOMAIN = """
(define (domain mini)
  (:requirements :strips)
  (:predicates (at ?x) (linked ?x ?y))
  (:action go
    :parameters (?from ?to)
    :precondition (and (at ?from) (linked ?from ?to))
    :effect (and (at ?to) (not (at ?from)))))
"""

MINI_PROBLEM = """
(define (problem mini-1) (:domain mini)
  (:objects a b)
  (:init (at a) (linked a b))
  (:goal (at b)))
"""


class TestParse:
    def test_minimal_domain(self):
        lifted = parse_task(MINI_DOMAIN, MINI_PROBLEM)
        assert len(lifted.schemata) == 1
        assert lifted.schemata[0].name == "go"

    def test_forall_rejected(self):
        bad = MINI_DOMAIN.replace("(and (at ?to)", "(and (forall (?z) (at ?z))")
        with pytest.raises(UnsupportedFeature):
            parse_task(bad, MINI_PROBLEM)

    def test_negative_precondition_rejected(self):
        bad = MINI_DOMAIN.replace("(and (at ?from)",
                                  "(and (not (at ?to)) (at ?from)")
        with pytest.raises(UnsupportedFeature):
            parse_task(bad, MINI_PROBLEM)

    def test_syntax_error_carries_position(self):
        with pytest.raises(ParseError):
            parse_task("(define (domain broken", MINI_PROBLEM)

    def test_case_insensitive(self):
        lifted = parse_task(MINI_DOMAIN.upper(), MINI_PROBLEM.upper())
        assert len(lifted.schemata) == 1

    def test_gripper_has_three_schemata(self):
        dom, prob = pddl_texts(GeneratorSpec("gripper", {"balls": 1}, 0))
        lifted = parse_task(dom, prob)
        assert sorted(s.name for s in lifted.schemata) == \
            ["drop", "move", "pick"]


class TestGround:
    def test_minimal_instance(self):
        task = ground(parse_task(MINI_DOMAIN, MINI_PROBLEM))
        # static pruning: only go(a,b) survives (linked holds for (a,b) only)
        assert [a.name for a in task.actions] == ["go(a,b)"]

    def test_transport_action_count(self, transport_task):
        kinds = {}
        for a in transport_task.actions:
            kinds.setdefault(a.name.split("(")[0], []).append(a.name)
        assert len(kinds["move"]) == 2
        assert len(kinds["load"]) == 4
        assert len(kinds["unload"]) == 4

    def test_tsp_ordered_pairs(self):
        task = generate(GeneratorSpec("simple-tsp", {"locations": 3}, 0))
        moves = [a for a in task.actions if a.name.startswith("move")]
        assert len(moves) == 6

    def test_deterministic_ids(self):
        a = generate(GeneratorSpec("logistics", {"cities": 2}, 3))
        b = generate(GeneratorSpec("logistics", {"cities": 2}, 3))
        assert [f.name for f in a.facts] == [f.name for f in b.facts]
        assert [x.name for x in a.actions] == [x.name for x in b.actions]
        assert a.init == b.init and a.goal == b.goal

    def test_zero_operator_domain(self):
        dom = """(define (domain empty) (:requirements :strips)
                 (:predicates (p ?x)))"""
        prob = """(define (problem e1) (:domain empty)
                  (:objects a) (:init (p a)) (:goal (p a)))"""
        task = ground(parse_task(dom, prob))
        assert list(task.actions) == []


class TestRoundTrip:
    @pytest.mark.parametrize("domain", sorted(DOMAINS))
    def test_serialize_reparse_reground(self, domain):
        spec = GeneratorSpec(domain, {}, 5)
        task = generate(spec)
        dom, prob = pddl_texts(spec)
        again = ground(parse_task(dom, prob))
        assert [f.name for f in again.facts] == [f.name for f in task.facts]
        assert [a.name for a in again.actions] == [a.name for a in task.actions]
        assert again.init == task.init and again.goal == task.goal

    def test_lifted_serializer_round_trips(self):
        lifted = parse_task(MINI_DOMAIN, MINI_PROBLEM)
        dom, prob = serialize(lifted)
        again = ground(parse_task(dom, prob))
        direct = ground(lifted)
        assert [a.name for a in again.actions] == \
            [a.name for a in direct.actions]
        assert again.init == direct.init and again.goal == direct.goal


class TestGeneratorContracts:
    def test_unknown_domain_lists_supported(self):
        with pytest.raises(ValueError) as exc:
            pddl_texts(GeneratorSpec("warehouse", {}, 0))
        assert "gripper" in str(exc.value)

    def test_out_of_range_parameter(self):
        with pytest.raises(ValueError):
            generate(GeneratorSpec("hanoi", {"discs": 0}, 0))

    def test_gripper_shape(self):
        task = generate(GeneratorSpec("gripper", {"balls": 2}, 0))
        goal_names = sorted(task.facts[f].name for f in task.goal)
        assert goal_names == ["at(ball1,roomb)", "at(ball2,roomb)"]

    def test_hanoi_shape(self):
        task = generate(GeneratorSpec("hanoi", {"discs": 3}, 0))
        goal_names = sorted(task.facts[f].name for f in task.goal)
        assert goal_names == ["on(d1,d2)", "on(d2,d3)", "on(d3,p3)"]
        assert "on(d3,p1)" in {task.facts[f].name for f in task.init}

    def test_tsp_degenerate_single_location(self):
        task = generate(GeneratorSpec("simple-tsp", {"locations": 1}, 0))
        assert task.goal <= task.init

    def test_identical_spec_identical_task(self):
        a = generate(GeneratorSpec("blocksworld-arm", {"blocks": 4}, 11))
        b = generate(GeneratorSpec("blocksworld-arm", {"blocks": 4}, 11))
        assert a.init == b.init and a.goal == b.goal

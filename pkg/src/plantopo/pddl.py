"""STRIPS-subset PDDL front end: parsing, grounding, serialization.

Supported requirements: :strips, :typing, :equality.  Preconditions are
conjunctions of positive atoms plus (in)equality constraints over
parameters; effects are conjunctions of add atoms and (not ...) deletes.
Quantifiers, disjunctions, conditional effects, negative preconditions,
derived predicates, and numeric fluents are rejected with
UnsupportedFeature.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ParseError, UnsupportedFeature
from .task_model import Task, make_task

_SUPPORTED_REQUIREMENTS = {":strips", ":typing", ":equality"}
_REJECTED_HEADS = {"forall", "exists", "when", "or", "imply", ":derived",
                   "increase", "decrease", "assign", ">=", "<=", ">", "<"}


# ---------------------------------------------------------------------------
# s-expression reader

@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c in "()":
            toks.append(_Tok(c, line, col))
            i += 1
            col += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "();":
            j += 1
        toks.append(_Tok(text[i:j].lower(), line, col))
        col += j - i
        i = j
    return toks


def _read_sexpr(toks, pos):
    if pos >= len(toks):
        raise ParseError("unexpected end of input")
    t = toks[pos]
    if t.text == "(":
        items = []
        pos += 1
        while True:
            if pos >= len(toks):
                raise ParseError("unbalanced parenthesis", t.line, t.col)
            if toks[pos].text == ")":
                return items, pos + 1
            item, pos = _read_sexpr(toks, pos)
            items.append(item)
    if t.text == ")":
        raise ParseError("unexpected ')'", t.line, t.col)
    return t, pos + 1


def _parse_text(text):
    toks = _tokenize(text)
    expr, pos = _read_sexpr(toks, 0)
    if pos != len(toks):
        t = toks[pos]
        raise ParseError("trailing input after top-level form", t.line, t.col)
    return expr


def _head(sexpr):
    if isinstance(sexpr, list) and sexpr and isinstance(sexpr[0], _Tok):
        return sexpr[0].text
    return None


def _atom_of(sexpr):
    """Interpret an s-expression as a positive atom (pred, args...)."""
    if not isinstance(sexpr, list) or not sexpr:
        raise ParseError("expected an atom")
    parts = []
    for item in sexpr:
        if not isinstance(item, _Tok):
            raise ParseError("nested expression inside an atom",
                             sexpr[0].line, sexpr[0].col)
        parts.append(item.text)
    return tuple(parts)


# ---------------------------------------------------------------------------
# lifted representation

@dataclass
class Schema:
    name: str
    params: list            # (variable, type) in declaration order
    pre: list               # positive atoms (pred, term...)
    add: list
    delete: list
    eq: list                # pairs of terms required equal
    neq: list               # pairs of terms required distinct


@dataclass
class LiftedTask:
    domain_name: str
    problem_name: str
    requirements: list
    types: dict             # type -> parent type ("object" is the root)
    predicates: dict        # name -> list of (param, type)
    objects: dict           # name -> type
    schemata: list
    init: list              # ground atoms
    goal: list              # ground atoms
    static_predicates: frozenset = field(default=frozenset())


def _parse_typed_list(items, what="object"):
    """Parse 'a b - t c d - t2 e' into [(a,t),(b,t),(c,t2),(d,t2),(e,object)]."""
    out = []
    pending = []
    i = 0
    while i < len(items):
        tok = items[i]
        if not isinstance(tok, _Tok):
            raise ParseError(f"malformed typed {what} list")
        if tok.text == "-":
            if i + 1 >= len(items) or not isinstance(items[i + 1], _Tok):
                raise ParseError("missing type after '-'", tok.line, tok.col)
            t = items[i + 1].text
            out.extend((name, t) for name in pending)
            pending = []
            i += 2
        else:
            pending.append(tok.text)
            i += 1
    out.extend((name, "object") for name in pending)
    return out


def _check_supported(sexpr):
    head = _head(sexpr)
    if head in _REJECTED_HEADS:
        tok = sexpr[0]
        raise UnsupportedFeature(
            f"'{head}' is outside the supported subset (line {tok.line})")


def _parse_condition(sexpr, allow_equality):
    """Parse a precondition into (atoms, eq, neq)."""
    atoms, eqs, neqs = [], [], []

    def one(item):
        _check_supported(item)
        head = _head(item)
        if head == "and":
            for sub in item[1:]:
                one(sub)
        elif head == "not":
            if len(item) == 2 and _head(item[1]) == "=":
                if not allow_equality:
                    raise UnsupportedFeature(
                        "equality used without the :equality requirement")
                a = _atom_of(item[1])
                neqs.append((a[1], a[2]))
            else:
                raise UnsupportedFeature("negative preconditions are not supported")
        elif head == "=":
            if not allow_equality:
                raise UnsupportedFeature(
                    "equality used without the :equality requirement")
            a = _atom_of(item)
            eqs.append((a[1], a[2]))
        else:
            atoms.append(_atom_of(item))

    if sexpr is not None:
        one(sexpr)
    return atoms, eqs, neqs


def _parse_effect(sexpr):
    adds, dels = [], []

    def one(item):
        _check_supported(item)
        head = _head(item)
        if head == "and":
            for sub in item[1:]:
                one(sub)
        elif head == "not":
            if len(item) != 2:
                raise ParseError("malformed (not ...) effect")
            _check_supported(item[1])
            dels.append(_atom_of(item[1]))
        else:
            adds.append(_atom_of(item))

    one(sexpr)
    return adds, dels


def parse_task(domain_text: str, problem_text: str) -> LiftedTask:
    dom = _parse_text(domain_text)
    prob = _parse_text(problem_text)
    if _head(dom) != "define":
        raise ParseError("domain file does not start with (define ...)")
    if _head(prob) != "define":
        raise ParseError("problem file does not start with (define ...)")

    domain_name = None
    requirements = []
    types = {}
    predicates = {}
    constants = {}
    schemata = []

    for section in dom[1:]:
        head = _head(section)
        if head == "domain":
            domain_name = section[1].text
        elif head == ":requirements":
            for r in section[1:]:
                if r.text not in _SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeature(f"requirement {r.text} is not supported")
                requirements.append(r.text)
        elif head == ":types":
            for name, parent in _parse_typed_list(section[1:], "type"):
                types[name] = parent
        elif head == ":constants":
            for name, t in _parse_typed_list(section[1:], "constant"):
                constants[name] = t
        elif head == ":predicates":
            for p in section[1:]:
                atom = p
                pname = atom[0].text
                params = _parse_typed_list(atom[1:], "parameter")
                predicates[pname] = params
        elif head == ":functions":
            raise UnsupportedFeature("numeric fluents are not supported")
        elif head == ":derived":
            raise UnsupportedFeature("derived predicates are not supported")
        elif head == ":action":
            name = section[1].text
            params, pre, eff = [], None, None
            i = 2
            while i < len(section):
                key = section[i].text
                if key == ":parameters":
                    params = _parse_typed_list(section[i + 1], "parameter")
                elif key == ":precondition":
                    pre = section[i + 1]
                elif key == ":effect":
                    eff = section[i + 1]
                else:
                    raise UnsupportedFeature(f"action keyword {key} is not supported")
                i += 2
            allow_eq = ":equality" in requirements
            atoms, eqs, neqs = _parse_condition(pre, allow_eq)
            if eff is None:
                raise ParseError(f"action {name} has no effect")
            adds, dels = _parse_effect(eff)
            schemata.append(Schema(name, params, atoms, adds, dels, eqs, neqs))
        else:
            raise ParseError(f"unknown domain section {head}")

    problem_name = None
    objects = dict(constants)
    init = []
    goal = []
    for section in prob[1:]:
        head = _head(section)
        if head == "problem":
            problem_name = section[1].text
        elif head == ":domain":
            pass
        elif head == ":objects":
            for name, t in _parse_typed_list(section[1:], "object"):
                objects[name] = t
        elif head == ":init":
            for atom in section[1:]:
                _check_supported(atom)
                if _head(atom) == "not":
                    raise UnsupportedFeature("negated init atoms are not supported")
                init.append(_atom_of(atom))
        elif head == ":goal":
            g = section[1]
            atoms, eqs, neqs = _parse_condition(g, ":equality" in requirements)
            if eqs or neqs:
                raise UnsupportedFeature("equality in goals is not supported")
            goal = atoms
        elif head == ":metric":
            raise UnsupportedFeature("metrics are not supported")
        else:
            raise ParseError(f"unknown problem section {head}")

    lifted = LiftedTask(
        domain_name=domain_name or "domain",
        problem_name=problem_name or "problem",
        requirements=requirements,
        types=types,
        predicates=predicates,
        objects=objects,
        schemata=schemata,
        init=init,
        goal=goal,
    )
    _validate_lifted(lifted)
    dynamic = set()
    for sch in schemata:
        for atom in itertools.chain(sch.add, sch.delete):
            dynamic.add(atom[0])
    lifted.static_predicates = frozenset(set(predicates) - dynamic)
    return lifted


def _validate_lifted(lifted: LiftedTask):
    for sch in lifted.schemata:
        declared = {v for v, _ in sch.params}
        for atom in itertools.chain(sch.pre, sch.add, sch.delete):
            if atom[0] not in lifted.predicates:
                raise ParseError(
                    f"undeclared predicate {atom[0]} in action {sch.name}")
            if len(atom) - 1 != len(lifted.predicates[atom[0]]):
                raise ParseError(
                    f"arity mismatch for {atom[0]} in action {sch.name}")
            for term in atom[1:]:
                if term.startswith("?") and term not in declared:
                    raise ParseError(
                        f"free variable {term} in action {sch.name}")
    for atom in itertools.chain(lifted.init, lifted.goal):
        if atom[0] not in lifted.predicates:
            raise ParseError(f"undeclared predicate {atom[0]}")
        if len(atom) - 1 != len(lifted.predicates[atom[0]]):
            raise ParseError(f"arity mismatch for init/goal atom {atom[0]}")
        for term in atom[1:]:
            if term not in lifted.objects:
                raise ParseError(f"unknown object {term} in {atom}")


# ---------------------------------------------------------------------------
# grounding

def _type_matches(lifted, obj_type, wanted):
    t = obj_type
    while True:
        if t == wanted:
            return True
        if t == "object":
            return False
        t = lifted.types.get(t, "object")


def _objects_of_type(lifted, wanted):
    return sorted(o for o, t in lifted.objects.items()
                  if wanted == "object" or _type_matches(lifted, t, wanted))


def _ground_atom(atom, binding):
    return (atom[0],) + tuple(binding.get(t, t) for t in atom[1:])


def atom_name(atom) -> str:
    if len(atom) == 1:
        return atom[0]
    return f"{atom[0]}({','.join(atom[1:])})"


def ground(lifted: LiftedTask) -> Task:
    """Instantiate schemata over type-compatible object tuples.

    A ground action is pruned when a static precondition atom (its predicate
    never occurs in any add or delete list) is absent from the initial
    state; static precondition atoms that do hold initially are invariantly
    true and are dropped from the ground precondition.  The fact table holds
    the non-static atoms referenced by surviving actions plus every init and
    goal atom, with ids assigned by lexicographic name order.
    """
    static = lifted.static_predicates
    init_atoms = set(lifted.init)
    raw_actions = []
    for sch in sorted(lifted.schemata, key=lambda s: s.name):
        domains = [_objects_of_type(lifted, t) for _, t in sch.params]
        names = [v for v, _ in sch.params]
        for combo in itertools.product(*domains):
            binding = dict(zip(names, combo))
            ok = True
            for x, y in sch.eq:
                if binding.get(x, x) != binding.get(y, y):
                    ok = False
                    break
            if ok:
                for x, y in sch.neq:
                    if binding.get(x, x) == binding.get(y, y):
                        ok = False
                        break
            if not ok:
                continue
            pre = [_ground_atom(a, binding) for a in sch.pre]
            kept_pre = []
            for atom in pre:
                if atom[0] in static:
                    if atom not in init_atoms:
                        ok = False
                        break
                else:
                    kept_pre.append(atom)
            if not ok:
                continue
            add = [_ground_atom(a, binding) for a in sch.add]
            dele = [_ground_atom(a, binding) for a in sch.delete]
            gname = atom_name((sch.name,) + combo)
            raw_actions.append((gname, kept_pre, add, dele))

    fact_atoms = set(lifted.init) | set(lifted.goal)
    for _, pre, add, dele in raw_actions:
        for atom in itertools.chain(pre, add, dele):
            fact_atoms.add(atom)
    fact_names = sorted(atom_name(a) for a in fact_atoms)
    raw_actions.sort(key=lambda r: r[0])
    actions = [
        (name,
         sorted(atom_name(a) for a in pre),
         sorted(atom_name(a) for a in add),
         sorted(atom_name(a) for a in dele))
        for name, pre, add, dele in raw_actions
    ]
    return make_task(
        fact_names,
        actions,
        sorted(atom_name(a) for a in lifted.init),
        sorted(atom_name(a) for a in lifted.goal),
        name=f"{lifted.domain_name}/{lifted.problem_name}",
    )


# ---------------------------------------------------------------------------
# serialization

def serialize(lifted: LiftedTask):
    """Render a lifted task back to (domain_text, problem_text)."""

    def typed(pairs):
        return " ".join(f"{n} - {t}" for n, t in pairs)

    out = [f"(define (domain {lifted.domain_name})"]
    if lifted.requirements:
        out.append("  (:requirements " + " ".join(lifted.requirements) + ")")
    if lifted.types:
        out.append("  (:types " + " ".join(
            f"{t} - {p}" for t, p in sorted(lifted.types.items())) + ")")
    preds = []
    for pname, params in sorted(lifted.predicates.items()):
        preds.append("(" + " ".join([pname] + [f"{v} - {t}" for v, t in params]) + ")")
    out.append("  (:predicates " + " ".join(preds) + ")")

    def atom_str(atom):
        return "(" + " ".join(atom) + ")"

    for sch in lifted.schemata:
        out.append(f"  (:action {sch.name}")
        out.append(f"    :parameters ({typed(sch.params)})")
        conj = [atom_str(a) for a in sch.pre]
        conj += [f"(= {x} {y})" for x, y in sch.eq]
        conj += [f"(not (= {x} {y}))" for x, y in sch.neq]
        out.append("    :precondition (and " + " ".join(conj) + ")")
        eff = [atom_str(a) for a in sch.add]
        eff += ["(not " + atom_str(a) + ")" for a in sch.delete]
        out.append("    :effect (and " + " ".join(eff) + "))")
    out.append(")")
    domain_text = "\n".join(out) + "\n"

    out = [f"(define (problem {lifted.problem_name})",
           f"  (:domain {lifted.domain_name})",
           "  (:objects " + typed(sorted(lifted.objects.items())) + ")",
           "  (:init " + " ".join(atom_str(a) for a in sorted(lifted.init)) + ")",
           "  (:goal (and " + " ".join(atom_str(a) for a in sorted(lifted.goal)) + "))",
           ")"]
    problem_text = "\n".join(out) + "\n"
    return domain_text, problem_text

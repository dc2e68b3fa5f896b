"""Substitution rules as validated data.

A rule set is a plain text file (see `parse_rule_set`): one header line
naming the set and its inflation factor, then one block per rule listing the
children of the inflated parent as (kind, pose) records in the
inflated-parent frame (parent's first vertex at the origin, first edge along
+x, scaled by the inflation factor).  All numbers are the integer triples of
normalized ring values, so files are bit-exact and diffable.

Loading validates every rule exactly: zero area residue, children contained
in the inflated parent, pairwise interior-disjoint children, and complete
kind coverage.  Rules for reflected parents are generated by mirror closure,
never stored.
"""

from __future__ import annotations

from typing import NamedTuple

from .exact import RingValue, ZERO, from_triple
from .geometry import Isometry, ORIGIN, Point, interiors_disjoint
from .tiles import (HALF_KINDS, PROTO_AREA, PlacedTile, TileKind, prototype,
                    scale_pose_translation)


class RuleError(ValueError):
    """Parse or validation failure; message names the rule and invariant."""


class VariantChoice(NamedTuple):
    """Global selection of one gray and one yellow substitution variant."""

    gray: int = 1
    yellow: int = 1

    def variant_for(self, kind: TileKind) -> int:
        if kind == TileKind.HALF_GRAY:
            return self.gray
        if kind == TileKind.HALF_YELLOW:
            return self.yellow
        return 1


ALL_CHOICES = tuple(VariantChoice(g, y) for g in (1, 2, 3) for y in (1, 2, 3))

_MIRROR = Isometry(0, True, ORIGIN)


class SubstitutionRule:
    """Children of one inflated parent, in the inflated-parent frame."""

    __slots__ = ("parent", "variant", "children")

    def __init__(self, parent: TileKind, variant: int, children):
        self.parent = parent
        self.variant = variant
        self.children = tuple(sorted(children, key=PlacedTile.sort_key))

    def mirrored(self) -> "SubstitutionRule":
        """The rule for the reflected parent: every child pose composed with
        the frame reflection."""
        return SubstitutionRule(
            self.parent, self.variant,
            [PlacedTile(c.kind, _MIRROR.compose(c.pose)) for c in self.children])

    def child_counts(self) -> dict[TileKind, int]:
        counts = {k: 0 for k in TileKind}
        for c in self.children:
            counts[c.kind] += 1
        return counts


class RuleValidationReport:
    """Exact partition audit for one rule."""

    def __init__(self, parent, variant):
        self.parent = parent
        self.variant = variant
        self.area_residue: RingValue | None = None
        self.contained: list[bool] = []
        self.disjoint = True
        self.offending_pairs: list[tuple[int, int]] = []
        self.messages: list[str] = []

    @property
    def passed(self) -> bool:
        return (self.area_residue is not None and self.area_residue.is_zero()
                and all(self.contained) and self.disjoint and not self.messages)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        lines = [f"rule {self.parent.token} variant {self.variant}: {status}"]
        if self.area_residue is not None:
            lines.append(f"  area residue: {self.area_residue}")
        if not all(self.contained):
            bad = [i for i, ok in enumerate(self.contained) if not ok]
            lines.append(f"  children outside parent: {bad}")
        if not self.disjoint:
            lines.append(f"  overlapping child pairs: {self.offending_pairs}")
        lines.extend(f"  {m}" for m in self.messages)
        return "\n".join(lines)


def validate_rule(rule: SubstitutionRule, inflation: RingValue) -> RuleValidationReport:
    """Exact partition check: area sum, containment, pairwise disjointness."""
    report = RuleValidationReport(rule.parent, rule.variant)
    target = inflation * inflation * PROTO_AREA[rule.parent]
    total = ZERO
    polys = []
    parent_poly = _inflated_polygon(rule.parent, inflation)
    for child in rule.children:
        poly = child.realize()
        polys.append(poly)
        total = total + PROTO_AREA[child.kind]
        report.contained.append(all(parent_poly.contains(v) >= 0
                                    for v in poly.vertices))
    report.area_residue = target - total
    n = len(polys)
    for i in range(n):
        for j in range(i + 1, n):
            if not interiors_disjoint(polys[i], polys[j]):
                report.disjoint = False
                report.offending_pairs.append((i, j))
    return report


def _inflated_polygon(kind: TileKind, inflation: RingValue):
    from .geometry import ConvexPolygon
    return ConvexPolygon([Point(v.x * inflation, v.y * inflation)
                          for v in prototype(kind).vertices])


class RuleSet:
    """Immutable, fully validated collection of substitution rules."""

    def __init__(self, name: str, inflation: RingValue, rules, metadata=None,
                 validated: bool = False):
        self.name = name
        self.inflation = inflation
        self.rules = dict(rules)  # (TileKind, variant) -> SubstitutionRule
        self.metadata = tuple(metadata or ())
        if not validated:
            problems = self.validate()
            if problems:
                raise RuleError("; ".join(problems))

    # -- structure ------------------------------------------------------

    def variant_count(self, kind: TileKind) -> int:
        return sum(1 for (k, v) in self.rules if k == kind)

    def validate(self) -> list[str]:
        problems = []
        for kind in TileKind:
            n = self.variant_count(kind)
            if n == 0:
                problems.append(f"missing rule for {kind.token}")
                continue
            for v in range(1, n + 1):
                if (kind, v) not in self.rules:
                    problems.append(f"{kind.token} variants not numbered 1..{n}")
        for (kind, variant), rule in sorted(self.rules.items()):
            report = validate_rule(rule, self.inflation)
            if not report.passed:
                problems.append(report.summary().replace("\n", " | "))
        return problems

    def validation_reports(self) -> list[RuleValidationReport]:
        return [validate_rule(rule, self.inflation)
                for _, rule in sorted(self.rules.items())]

    def rule_for(self, kind: TileKind, chirality: bool = False,
                 choice: VariantChoice = VariantChoice()) -> SubstitutionRule:
        """Rule for a (possibly reflected) parent under a global variant choice."""
        variant = choice.variant_for(kind)
        limit = self.variant_count(kind)
        if not 1 <= variant <= limit:
            raise RuleError(
                f"{kind.token} has {limit} variant(s); requested {variant}")
        rule = self.rules[(kind, variant)]
        return rule.mirrored() if chirality else rule

    def check_choice(self, choice: VariantChoice) -> None:
        for kind in (TileKind.HALF_GRAY, TileKind.HALF_YELLOW):
            v = choice.variant_for(kind)
            limit = self.variant_count(kind)
            if not 1 <= v <= limit:
                raise RuleError(
                    f"{kind.token} has {limit} variant(s); requested {v}")

    # -- count matrix -----------------------------------------------------

    def count_matrix(self, choice: VariantChoice = VariantChoice()):
        """5x5 matrix M with M[child][parent] = children of that kind, under
        the given global variant choice."""
        self.check_choice(choice)
        matrix = [[0] * len(TileKind) for _ in TileKind]
        for parent in TileKind:
            rule = self.rules[(parent, choice.variant_for(parent))]
            for child in rule.children:
                matrix[int(child.kind)][int(parent)] += 1
        return matrix

    # -- serialization ----------------------------------------------------

    def serialize(self) -> str:
        lines = [f"# {m}" for m in self.metadata]
        a, b, e = self.inflation.triple()
        lines.append(f"ruleset {self.name} inflation {a} {b} {e}")
        for (kind, variant) in sorted(self.rules):
            rule = self.rules[(kind, variant)]
            lines.append(f"rule {kind.token} variant {variant}")
            for c in rule.children:
                ax, bx, ex = c.pose.t.x.triple()
                ay, by, ey = c.pose.t.y.triple()
                lines.append(
                    f"child {c.kind.token} k={c.pose.k} m={int(c.pose.m)} "
                    f"t={ax} {bx} {ex} {ay} {by} {ey}")
        return "\n".join(lines) + "\n"


def parse_rule_set(text: str) -> RuleSet:
    """Parse and fully validate a rule file.

    Grammar (line oriented, '#' comments):

        ruleset <name> inflation <a> <b> <e>
        rule <parent-kind> variant <n>
        child <kind> k=<0..11> m=<0|1> t=<ax> <bx> <ex> <ay> <by> <ey>
    """
    name = None
    inflation = None
    metadata = []
    rules: dict[tuple[TileKind, int], list[PlacedTile]] = {}
    current: list[PlacedTile] | None = None

    def fail(lineno, msg):
        raise RuleError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            metadata.append(line[1:].strip())
            continue
        if not line:
            continue
        parts = line.split()
        if parts[0] == "ruleset":
            if len(parts) != 6 or parts[2] != "inflation":
                fail(lineno, "expected: ruleset <name> inflation <a> <b> <e>")
            if name is not None:
                fail(lineno, "duplicate ruleset header")
            name = parts[1]
            try:
                a, b, e = (int(x) for x in parts[3:6])
                inflation = RingValue(a, b, e)
            except ValueError:
                fail(lineno, "inflation must be three integers")
            if inflation.triple() != (a, b, e):
                fail(lineno, "inflation triple is not in normal form")
            if inflation.sign() <= 0:
                fail(lineno, "inflation must be positive")
        elif parts[0] == "rule":
            if name is None:
                fail(lineno, "rule before ruleset header")
            if len(parts) != 4 or parts[2] != "variant":
                fail(lineno, "expected: rule <parent-kind> variant <n>")
            try:
                parent = TileKind.from_token(parts[1])
            except ValueError as exc:
                fail(lineno, str(exc))
            try:
                variant = int(parts[3])
            except ValueError:
                fail(lineno, "variant must be an integer")
            if variant < 1:
                fail(lineno, "variant must be >= 1")
            if (parent, variant) in rules:
                fail(lineno, f"duplicate rule {parent.token} variant {variant}")
            current = []
            rules[(parent, variant)] = current
        elif parts[0] == "child":
            if current is None:
                fail(lineno, "child before any rule header")
            if (len(parts) != 10 or not parts[2].startswith("k=")
                    or not parts[3].startswith("m=") or not parts[4].startswith("t=")):
                fail(lineno, "expected: child <kind> k=<k> m=<m> "
                             "t=<ax> <bx> <ex> <ay> <by> <ey>")
            try:
                kind = TileKind.from_token(parts[1])
            except ValueError as exc:
                fail(lineno, str(exc))
            try:
                k = int(parts[2][2:])
                m = int(parts[3][2:])
                nums = [int(parts[4][2:])] + [int(x) for x in parts[5:10]]
            except ValueError:
                fail(lineno, "malformed child numbers")
            if not 0 <= k <= 11:
                fail(lineno, "rotation k must be 0..11 (multiples of 30 degrees)")
            if m not in (0, 1):
                fail(lineno, "mirror flag must be 0 or 1")
            x = from_triple(nums[0:3])
            y = from_triple(nums[3:6])
            if x.triple() != tuple(nums[0:3]) or y.triple() != tuple(nums[3:6]):
                fail(lineno, "translation triples must be in normal form")
            current.append(PlacedTile(kind, Isometry(k, bool(m), Point(x, y))))
        else:
            fail(lineno, f"unknown directive {parts[0]!r}")

    if name is None or inflation is None:
        raise RuleError("missing ruleset header")
    built = {key: SubstitutionRule(key[0], key[1], children)
             for key, children in rules.items()}
    return RuleSet(name, inflation, built, metadata)


def load_rule_file(path) -> RuleSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rule_set(fh.read())


def apex_child(rule: SubstitutionRule, inflation: RingValue) -> PlacedTile:
    """The child whose realized polygon contains the parent's inflated apex
    vertex (half-triangle parents only)."""
    if rule.parent not in HALF_KINDS:
        raise ValueError("apex constraint applies to half-triangle parents")
    apex = prototype(rule.parent).vertices[2]
    apex = Point(apex.x * inflation, apex.y * inflation)
    for child in rule.children:
        if child.realize().contains(apex) >= 0:
            return child
    raise RuleError(f"no child covers the apex of {rule.parent.token}")

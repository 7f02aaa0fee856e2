"""
Scenario files.

A scenario is one UTF-8 JSON document describing a flow: the graded
group, a truncation, a Novikov complex, closed orbits (listed, as
irreducible factors, or as the homology maps of a mapping torus), a
move script and a cyclic cover. Series are written in the canonical
text form of :mod:`novikov.notation`.
"""

import json
import logging
import sys
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Tuple

from novikov.complex import BasedComplex, empty_complex
from novikov.errors import NovikovError, ScenarioError
from novikov.field import Ambiguity
from novikov.grading import Truncation, parse_truncation, render_truncation, tmin
from novikov.group import CyclicQuotient, GradedGroup
from novikov.lefschetz import FibreMaps, fibre_maps, lefschetz_zeta
from novikov.moves import FlowState, Move, move_from_dict
from novikov.orbits import ClosedOrbit, IrreducibleOrbitFactor, OrbitSet, expand_factor_to_orbits

log = logging.getLogger(__name__)


@dataclass
class Scenario:
    """
    Everything one command needs to know about a flow.
    """

    name: str
    group: GradedGroup
    truncation: Truncation = None
    """R; every series of the scenario is known below it."""
    seed: int = 0
    ambiguity: Ambiguity = Ambiguity.SIGN
    summands: Optional[Tuple[int, ...]] = None
    """The orders d of the summands ``Q(zeta_d)`` to report; all of them if None."""
    complex: Optional[BasedComplex] = None
    orbits: Tuple[ClosedOrbit, ...] = ()
    """Closed orbits listed one by one, complete below R."""
    factors: Tuple[IrreducibleOrbitFactor, ...] = ()
    """Closed orbits given as factors of the product formula."""
    fibre_maps: Optional[List[List[List[int]]]] = None
    """``H_0, H_1, ...`` of a mapping torus over the circle."""
    moves: Tuple[Move, ...] = ()
    cover: Optional[CyclicQuotient] = None
    exact: bool = False
    """The complex is a group ring complex with polynomial entries and no orbits."""
    extra: Dict[str, Any] = field(default_factory=dict, repr=False)
    """Unknown keys, written back unchanged."""

    # -- flows ------------------------------------------------------------------

    @property
    def maps(self) -> Optional[FibreMaps]:
        return None if self.fibre_maps is None else fibre_maps(self.fibre_maps)

    def flow_state(self, R: Truncation) -> FlowState:
        """
        The flow of this scenario at truncation R.

        A mapping torus becomes an empty complex whose zeta function is the
        Lefschetz zeta function of its homology maps.

        Args:
            R (Truncation): The working truncation.

        Raises:
            OrbitError: If a factor is expanded with an infinite bound.

        Returns:
            FlowState: The flow.
        """
        if self.fibre_maps is not None:
            return FlowState(empty_complex(self.group, R), OrbitSet(self.group, (), R), lefschetz_zeta(self.maps, R))
        C = self.complex if self.complex is not None else empty_complex(self.group, R)
        C = replace(C, truncation=R)
        orbits = OrbitSet(self.group, self.orbits, tmin(self.truncation, R) if self.orbits else None)
        for f in self.factors:
            orbits = orbits + expand_factor_to_orbits(f, self.group, R)
        log.info('flow of %s: %d generators, %d orbits below O(%s)',
                 self.name, len(C.generators), len(orbits), render_truncation(R))
        return FlowState(C, orbits)

    # -- serialisation --------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            'name': self.name,
            'seed': self.seed,
            'group': self.group.to_dict(),
            'truncation': render_truncation(self.truncation),
            'ambiguity': self.ambiguity.value,
        }
        if self.summands is not None:
            out['summands'] = list(self.summands)
        if self.exact:
            out['exact'] = True
        if self.complex is not None:
            out['complex'] = self.complex.to_dict()
        if self.orbits:
            out['orbits'] = [o.to_dict() for o in self.orbits]
        if self.factors:
            out['factors'] = [f.to_dict() for f in self.factors]
        if self.fibre_maps is not None:
            out['fibre_maps'] = self.fibre_maps
        if self.moves:
            out['moves'] = [m.to_dict() for m in self.moves]
        if self.cover is not None:
            out['cover'] = self.cover.to_dict()
        out.update(self.extra)
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'Scenario':
        """
        Read a scenario document.

        Raises:
            ScenarioError: If some field does not parse against the declared group.
        """
        if not isinstance(data, Mapping):
            raise ScenarioError('A scenario must be a JSON object')
        if 'group' not in data:
            raise ScenarioError('A scenario needs a "group"')
        known = {'name', 'seed', 'group', 'truncation', 'ambiguity', 'summands', 'exact', 'complex',
                 'orbits', 'factors', 'fibre_maps', 'moves', 'cover'}
        try:
            group = GradedGroup.from_dict(data['group'])
            R = parse_truncation(data.get('truncation'))
            complex_ = BasedComplex.from_dict(data['complex'], group, R) if data.get('complex') is not None else None
            orbits = OrbitSet.from_dict(data.get('orbits') or [], group, None).orbits
            maps = data.get('fibre_maps')
            if maps is not None:
                fibre_maps(maps)
                maps = [[[int(x) for x in row] for row in m] for m in maps]
            summands = data.get('summands')
            return cls(
                name=str(data.get('name', 'scenario')),
                group=group,
                truncation=R,
                seed=int(data.get('seed', 0)),
                ambiguity=Ambiguity.parse(data.get('ambiguity', Ambiguity.SIGN.value)),
                summands=None if summands is None else tuple(int(d) for d in summands),
                complex=complex_,
                orbits=orbits,
                factors=tuple(IrreducibleOrbitFactor.from_dict(f, group) for f in data.get('factors') or []),
                fibre_maps=maps,
                moves=tuple(move_from_dict(m, group) for m in data.get('moves') or []),
                cover=CyclicQuotient.from_dict(data['cover']) if data.get('cover') is not None else None,
                exact=bool(data.get('exact', False)),
                extra={k: v for k, v in data.items() if k not in known},
            )
        except ScenarioError:
            raise
        except (NovikovError, TypeError, ValueError, KeyError, AttributeError) as e:
            raise ScenarioError(f'{type(e).__name__}: {e}') from e


def loads(text: str) -> Scenario:
    """
    Parse a scenario document.

    Raises:
        ScenarioError: If the text is not valid JSON or not a scenario.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f'Not a JSON document: {e}') from e
    return Scenario.from_dict(data)


def dumps(scenario: Scenario) -> str:
    """The document form of a scenario; byte-identical for equal scenarios."""
    return json.dumps(scenario.to_dict(), indent=2, ensure_ascii=False) + '\n'


def read_scenario(path: str) -> Scenario:
    """
    Read a scenario file, ``-`` being stdin.

    Raises:
        ScenarioError: If the file is not a scenario.
        OSError: If the file cannot be read.
    """
    if path == '-':
        text = sys.stdin.read()
    else:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    scenario = loads(text)
    log.info('loaded scenario %s from %s', scenario.name, path)
    return scenario


def write_scenario(scenario: Scenario, path: Optional[str]) -> str:
    """
    Write a scenario to a file; with no path only return the text.
    """
    text = dumps(scenario)
    if path is not None and path != '-':
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
    return text

"""Network penetration domain: compromise every sensitive host.

A scenario is a JSON document:

    {
      "subnets": [{"id": "dmz", "internet": true}, {"id": "lan"}],
      "topology": [["dmz", "lan"]],
      "hosts": [
        {"id": "web", "subnet": "dmz", "services": ["http"], "sensitive": false},
        {"id": "db", "subnet": "lan", "services": ["sql"], "sensitive": true}
      ],
      "exploits": [{"service": "http", "cost": 1}, {"service": "sql", "cost": 2}]
    }

A host is reachable when its subnet faces the internet, already contains a
compromised host, or is adjacent to a subnet that does. Exploiting a
reachable, not-yet-compromised host through one of its services marks it
compromised; compromised and reachable sets only ever grow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from ..core import Action, Predicate, SimulatorProblem, State
from ..errors import InapplicableAction, ScenarioInvalid


@dataclass(frozen=True)
class Host:
    id: str
    subnet: str
    services: tuple
    sensitive: bool


@dataclass(frozen=True)
class PentestScenario:
    subnets: tuple  # subnet ids, file order
    internet: frozenset  # subnet ids facing the internet
    adjacency: dict  # subnet id -> frozenset of neighbouring subnet ids
    hosts: tuple  # Host values, file order
    exploit_costs: dict  # service id -> cost


def _require(condition: bool, reason: str):
    if not condition:
        raise ScenarioInvalid(reason)


def parse_scenario(data: dict) -> PentestScenario:
    _require(isinstance(data, dict), "scenario must be a JSON object")
    for key in ("subnets", "topology", "hosts", "exploits"):
        _require(key in data, f"missing {key!r} section")

    subnet_ids = []
    internet = set()
    for entry in data["subnets"]:
        _require(isinstance(entry, dict) and "id" in entry, "subnet entries need an id")
        sid = str(entry["id"])
        _require(sid not in subnet_ids, f"duplicate subnet {sid!r}")
        subnet_ids.append(sid)
        if entry.get("internet", False):
            internet.add(sid)
    _require(bool(internet), "no internet-facing subnet")

    adjacency = {sid: set() for sid in subnet_ids}
    for pair in data["topology"]:
        _require(
            isinstance(pair, (list, tuple)) and len(pair) == 2,
            "topology entries must be subnet pairs",
        )
        a, b = str(pair[0]), str(pair[1])
        _require(a in adjacency, f"topology references unknown subnet {a!r}")
        _require(b in adjacency, f"topology references unknown subnet {b!r}")
        adjacency[a].add(b)
        adjacency[b].add(a)

    exploit_costs = {}
    for entry in data["exploits"]:
        _require(
            isinstance(entry, dict) and "service" in entry,
            "exploit entries need a service",
        )
        service = str(entry["service"])
        _require(service not in exploit_costs, f"duplicate exploit for service {service!r}")
        cost = entry.get("cost", 1)
        _require(
            isinstance(cost, int) and not isinstance(cost, bool) and cost >= 1,
            f"exploit cost for {service!r} must be a positive integer",
        )
        exploit_costs[service] = cost

    hosts = []
    host_ids = set()
    for entry in data["hosts"]:
        _require(isinstance(entry, dict) and "id" in entry, "host entries need an id")
        hid = str(entry["id"])
        _require(hid not in host_ids, f"duplicate host {hid!r}")
        host_ids.add(hid)
        subnet = str(entry.get("subnet", ""))
        _require(subnet in adjacency, f"host {hid!r} is on unknown subnet {subnet!r}")
        services = tuple(str(s) for s in entry.get("services", ()))
        hosts.append(Host(hid, subnet, services, bool(entry.get("sensitive", False))))

    # Sanity check: every sensitive host must sit in the part of the subnet
    # graph that an attack starting from the internet can ever touch.
    seen = set(internet)
    frontier = list(internet)
    while frontier:
        for neighbour in adjacency[frontier.pop()]:
            if neighbour not in seen:
                seen.add(neighbour)
                frontier.append(neighbour)
    for host in hosts:
        if host.sensitive:
            _require(
                host.subnet in seen,
                f"sensitive host {host.id!r} is unreachable from the internet",
            )

    return PentestScenario(
        tuple(subnet_ids),
        frozenset(internet),
        {sid: frozenset(neigh) for sid, neigh in adjacency.items()},
        tuple(hosts),
        exploit_costs,
    )


def parse_scenario_text(text: str) -> PentestScenario:
    return parse_scenario(json.loads(text))


class PentestProblem(SimulatorProblem):
    def __init__(self, scenario: PentestScenario):
        self.scenario = scenario
        self._compromised_atom = {
            h.id: Predicate(f"compromised-{h.id}") for h in scenario.hosts
        }
        self._reachable_atom = {
            h.id: Predicate(f"reachable-{h.id}") for h in scenario.hosts
        }
        self._action_target = {}
        exploits = []
        for host in scenario.hosts:
            for service in host.services:
                cost = scenario.exploit_costs.get(service)
                if cost is None:
                    continue
                action = Action(f"exploit-{host.id}-{service}", cost)
                exploits.append(action)
                self._action_target[action.name] = host
        self._actions = tuple(exploits)

    @classmethod
    def from_text(cls, text: str) -> "PentestProblem":
        return cls(parse_scenario_text(text))

    @property
    def actions(self) -> tuple:
        return self._actions

    @cached_property
    def goal_predicates(self) -> tuple:
        return tuple(
            self._compromised_atom[h.id] for h in self.scenario.hosts if h.sensitive
        )

    def _reachable_hosts(self, compromised: set) -> set:
        open_subnets = set(self.scenario.internet)
        for host in self.scenario.hosts:
            if host.id in compromised:
                open_subnets.add(host.subnet)
                open_subnets |= self.scenario.adjacency[host.subnet]
        return {h.id for h in self.scenario.hosts if h.subnet in open_subnets}

    def _encode(self, compromised: set) -> State:
        atoms = [self._compromised_atom[h] for h in compromised]
        atoms += [self._reachable_atom[h] for h in self._reachable_hosts(compromised)]
        return frozenset(atoms)

    def _compromised(self, state: State) -> set:
        return {
            h.id for h in self.scenario.hosts if self._compromised_atom[h.id] in state
        }

    @cached_property
    def initial(self) -> State:
        return self._encode(set())

    def applicable(self, state: State) -> tuple:
        out = []
        for action in self.actions:
            host = self._action_target[action.name]
            if self._compromised_atom[host.id] in state:
                continue
            if self._reachable_atom[host.id] in state:
                out.append(action)
        return tuple(out)

    def simulate(self, state: State, action: Action) -> State:
        host = self._action_target.get(action.name)
        if host is None:
            raise InapplicableAction(f"no such exploit {action.name!r}")
        if self._compromised_atom[host.id] in state:
            raise InapplicableAction(f"host {host.id!r} is already compromised")
        if self._reachable_atom[host.id] not in state:
            raise InapplicableAction(f"host {host.id!r} is not reachable")
        return self._encode(self._compromised(state) | {host.id})

    def is_goal(self, state: State) -> bool:
        return self.goal_set <= state

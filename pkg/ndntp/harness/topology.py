"""Static routing for a scenario.

Each announced prefix gets, on every node, one nexthop per neighbor face that
leads to a server announcing it without passing through the node itself.
The cost is the link delay to the neighbor plus the neighbor's shortest
delay to an announcing server. Only forwarders relay: servers terminate
paths and clients never transit.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import networkx as nx

from ..consts import APP_FACE
from ..core.names import Name
from ..forwarder.fib import Fib, FibEntry, NextHop
from ..schemas import ScenarioConfig


@dataclass(frozen=True)
class FaceBinding:
    node: str
    face: int
    link_index: int
    neighbor: str
    delay: int


def link_faces(config: ScenarioConfig) -> dict[str, list[FaceBinding]]:
    """Faces per node, numbered from 1 in link order."""
    faces: dict[str, list[FaceBinding]] = {node.id: [] for node in config.nodes}
    for index, link in enumerate(config.links):
        for node, neighbor in ((link.a, link.b), (link.b, link.a)):
            face = len(faces[node]) + 1
            faces[node].append(FaceBinding(node, face, index, neighbor, link.delay_us))
    return faces


def announcements(config: ScenarioConfig) -> dict[Name, list[str]]:
    announced: dict[Name, list[str]] = defaultdict(list)
    for node in config.nodes:
        if node.role == "server":
            for prefix in node.server.prefixes():
                announced[prefix].append(node.id)
    return dict(announced)


def _transit_graph(config: ScenarioConfig, servers: list[str]) -> nx.DiGraph:
    roles = {node.id: node.role for node in config.nodes}
    graph = nx.DiGraph()
    graph.add_nodes_from(node_id for node_id, role in roles.items() if role == "forwarder")
    graph.add_nodes_from(servers)
    for link in config.links:
        for source, target in ((link.a, link.b), (link.b, link.a)):
            # Edges point away from servers: a server may start a path but never relays one.
            if roles[target] != "forwarder":
                continue
            if roles[source] == "forwarder" or source in servers:
                graph.add_edge(source, target, weight=link.delay_us)
    return graph


def compute_fib(config: ScenarioConfig) -> dict[str, Fib]:
    faces = link_faces(config)
    fibs = {node.id: Fib() for node in config.nodes}

    for prefix, servers in sorted(announcements(config).items(), key=lambda item: item[0].components):
        graph = _transit_graph(config, servers)
        for node in config.nodes:
            if node.id in servers:
                fibs[node.id].add(FibEntry(prefix, (NextHop(APP_FACE, 0),)))
                continue

            reduced = graph.copy()
            if node.id in reduced:
                reduced.remove_node(node.id)
            sources = [server for server in servers if server in reduced]
            distances = nx.multi_source_dijkstra_path_length(reduced, sources, weight="weight") if sources else {}

            nexthops: dict[int, int] = {}
            for binding in faces[node.id]:
                if binding.neighbor in servers:
                    cost = binding.delay
                elif binding.neighbor in distances:
                    cost = binding.delay + distances[binding.neighbor]
                else:
                    continue
                if binding.face not in nexthops or cost < nexthops[binding.face]:
                    nexthops[binding.face] = cost
            if nexthops:
                fibs[node.id].add(FibEntry(prefix, tuple(NextHop(face, cost) for face, cost in nexthops.items())))
    return fibs


def hop_distances(config: ScenarioConfig, source: str) -> dict[str, int]:
    graph = nx.Graph()
    graph.add_nodes_from(node.id for node in config.nodes)
    graph.add_edges_from((link.a, link.b) for link in config.links)
    return dict(nx.single_source_shortest_path_length(graph, source))

"""The dodecahedron meets the planar girth-5 bound with no slack."""

import networkx as nx

from fvslab import Graph, fvs_planar_girth5, min_fvs_exact, verify_certificate


def main():
    g = Graph.from_networkx(nx.dodecahedral_graph())
    cert = fvs_planar_girth5(g)
    phi = min_fvs_exact(g).size
    print(f"n={g.n} m={g.m} bound=({2 * g.m - g.n + 2})/7")
    print(f"exact phi = {phi}, certified set size = {cert.size}, verified = {verify_certificate(g, cert)}")
    print("rules used:", " ".join(cert.trace.rules()))


if __name__ == "__main__":
    main()

from greedy_matching import WeightedGraph
from greedy_matching.reductions import PATH, main_path_weights

# vertex ids of the isolated gadget, in path order
G = {name: k for k, name in enumerate(PATH)}


def gadget(weights=None):
    ws = weights or main_path_weights(2)
    return WeightedGraph(10, {(k, k + 1): w for k, w in enumerate(ws)})


def named(*pairs):
    return frozenset(tuple(sorted((G[a], G[b]))) for a, b in pairs)


def path(*weights):
    return WeightedGraph(len(weights) + 1, {(i, i + 1): w for i, w in enumerate(weights)})


M_N = named(("r", "alpha"), ("gamma", "y"), ("p", "q"), ("z", "s"))
M_NN = named(("r", "alpha"), ("y", "z"), ("p", "q"), ("s", "t"))
M_P = named(("q", "r"), ("gamma", "y"), ("z", "s"), ("beta", "p"))
M_B = named(("q", "r"), ("alpha", "gamma"), ("y", "z"), ("beta", "p"), ("s", "t"))

#include "treechain/random.hpp"

#include <deque>
#include <functional>

namespace treechain::random {

SimplicialGraph random_tree(int n, Engine& rng)
{
    if (n < 1) throw std::invalid_argument("random_tree needs at least one vertex");
    std::vector<std::vector<int>> children(n);
    std::vector<SimplicialGraph::Edge> edges;
    for (int i = 1; i < n; ++i) {
        int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
        children[parent].push_back(i);
        edges.emplace_back(VertexId::opaque(parent), VertexId::opaque(i));
    }
    std::map<VertexId, Point> coords;
    int next_x = 0;
    std::function<void(int, int)> place = [&](int v, int depth) {
        coords.emplace(VertexId::opaque(v), Point{Rational(next_x++), Rational(depth)});
        for (int c : children[v]) place(c, depth + 1);
    };
    place(0, 0);
    std::vector<VertexId> vertices;
    for (int i = 0; i < n; ++i) vertices.push_back(VertexId::opaque(i));
    return SimplicialGraph(std::move(vertices), std::move(edges), std::move(coords));
}

SimplicialMapping random_simplicial_map(GraphPtr source, GraphPtr target, Engine& rng)
{
    const auto& src = *source;
    const auto& dst = *target;
    if (dst.size() == 0) throw std::invalid_argument("empty target");
    std::vector<int> image(src.size(), -1);
    auto pick = [&](int around) {
        const auto& nb = dst.neighbors(around);
        int choice = std::uniform_int_distribution<int>(0, static_cast<int>(nb.size()))(rng);
        return choice == static_cast<int>(nb.size()) ? around : nb[choice];
    };
    for (int root = 0; root < src.size(); ++root) {
        if (image[root] >= 0) continue;
        image[root] = std::uniform_int_distribution<int>(0, dst.size() - 1)(rng);
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : src.neighbors(u)) {
                if (image[w] >= 0) continue;
                image[w] = pick(image[u]);
                queue.push_back(w);
            }
        }
    }
    return SimplicialMapping(std::move(source), std::move(target), std::move(image));
}

Rational random_unit(Engine& rng, long denominator)
{
    long num = std::uniform_int_distribution<long>(0, denominator)(rng);
    return make_rational(num, denominator);
}

} // namespace treechain::random

/**
 * Layered drawing of the Hasse diagram: higher concepts above the concepts
 * they contain. Pure and deterministic so it can be unit-tested: layer
 * assignment by longest path from the top, barycenter sweeps for ordering,
 * even horizontal spacing per layer.
 */
const DEFAULTS = { columnGap: 110, rowGap: 96, margin: 60, sweeps: 4 };
/** edges are [child, parent]: the parent is drawn above the child. */
export function layoutLattice(nodeCount, edges, options = {}) {
    const opts = { ...DEFAULTS, ...options };
    if (nodeCount === 0)
        return { nodes: [], width: 0, height: 0 };
    for (const [child, parent] of edges) {
        if (child < 0 || child >= nodeCount || parent < 0 || parent >= nodeCount ||
            child === parent) {
            throw new Error(`bad edge ${child}->${parent}`);
        }
    }
    const parents = Array.from({ length: nodeCount }, () => []);
    const children = Array.from({ length: nodeCount }, () => []);
    for (const [child, parent] of edges) {
        parents[child].push(parent);
        children[parent].push(child);
    }
    // layer = longest chain of covers from a maximal concept
    const layer = new Array(nodeCount).fill(-1);
    const indegree = parents.map((p) => p.length);
    const queue = [];
    for (let i = 0; i < nodeCount; i++) {
        if (indegree[i] === 0) {
            layer[i] = 0;
            queue.push(i);
        }
    }
    let seen = 0;
    while (queue.length > 0) {
        const node = queue.shift();
        seen += 1;
        for (const child of children[node]) {
            layer[child] = Math.max(layer[child], layer[node] + 1);
            indegree[child] -= 1;
            if (indegree[child] === 0)
                queue.push(child);
        }
    }
    if (seen !== nodeCount)
        throw new Error("cover relation has a cycle");
    const nLayers = Math.max(...layer) + 1;
    const rows = Array.from({ length: nLayers }, () => []);
    for (let i = 0; i < nodeCount; i++)
        rows[layer[i]].push(i);
    for (const row of rows)
        row.sort((a, b) => a - b);
    // barycenter ordering sweeps (down then up), stable on ties
    const position = new Array(nodeCount).fill(0);
    const reindex = () => {
        for (const row of rows)
            row.forEach((node, idx) => (position[node] = idx));
    };
    reindex();
    const sortRow = (row, neighbours) => {
        const score = new Map();
        for (const node of row) {
            const ns = neighbours[node];
            score.set(node, ns.length === 0
                ? position[node]
                : ns.reduce((acc, n) => acc + position[n], 0) / ns.length);
        }
        row.sort((a, b) => score.get(a) - score.get(b) || a - b);
    };
    for (let sweep = 0; sweep < opts.sweeps; sweep++) {
        for (let l = 1; l < nLayers; l++) {
            sortRow(rows[l], parents);
            reindex();
        }
        for (let l = nLayers - 2; l >= 0; l--) {
            sortRow(rows[l], children);
            reindex();
        }
    }
    const widest = Math.max(...rows.map((row) => row.length));
    const width = opts.margin * 2 + Math.max(widest - 1, 0) * opts.columnGap;
    const height = opts.margin * 2 + Math.max(nLayers - 1, 0) * opts.rowGap;
    const nodes = [];
    rows.forEach((row, l) => {
        const rowWidth = (row.length - 1) * opts.columnGap;
        const offset = (width - rowWidth) / 2;
        row.forEach((node, idx) => {
            nodes.push({
                id: node,
                x: offset + idx * opts.columnGap,
                y: opts.margin + l * opts.rowGap,
                layer: l,
            });
        });
    });
    nodes.sort((a, b) => a.id - b.id);
    return { nodes, width, height };
}

/**
 * View-model projection: a pure function of the last server snapshots.
 * Nothing here mutates analysis state; every displayed number is taken
 * verbatim from the payloads.
 */
function displayMap(lattice) {
    const map = new Map();
    for (const item of lattice.items)
        map.set(item.id, item.display);
    return map;
}
function nodeState(id, session) {
    if (session.current && session.current.concept === id)
        return "current";
    if (session.frontier.includes(id))
        return "frontier";
    if (session.explained.includes(id))
        return "explained";
    return "plain";
}
function show(ids, names) {
    return ids.map((id) => names.get(id) ?? String(id));
}
function describe(entry, names) {
    if (entry.event === "present") {
        return `presented c${entry.concept} [${show(entry.label ?? [], names).join(", ")}]`;
    }
    if (entry.event === "fault_located") {
        return `fault located at c${entry.concept} (${show(entry.items ?? [], names).join(", ")})`;
    }
    return `no fault at c${entry.concept}`;
}
export function buildViewModel(lattice, session) {
    const names = displayMap(lattice);
    const nodes = lattice.concepts.map((c, id) => ({
        id,
        labelItems: show(c.attr_labels, names),
        objectLabels: c.obj_labels.map((o) => lattice.objects[o] ?? String(o)),
        support: c.support,
        lift: c.lift,
        isFailureConcept: c.is_failure_concept,
        clusterId: c.cluster_id,
        isHead: c.is_head,
        state: nodeState(id, session),
    }));
    return {
        nodes,
        edges: lattice.edges,
        frontier: [...session.frontier],
        failuresToExplain: [...session.failures_to_explain],
        inspectedCount: session.fault_context.length,
        faultContext: show(session.fault_context, names),
        done: session.done,
        allExplained: session.failures_to_explain.length === 0,
        strategy: session.strategy,
        current: session.current
            ? { concept: session.current.concept, label: show(session.current.label, names) }
            : null,
        log: session.log.map((entry) => describe(entry, names)),
    };
}

"""Define the search pipeline graph: enumerate, group, certify."""

from __future__ import annotations

import asyncio
import functools
import logging
import time
from typing import Any, Dict, List, Literal, Optional

from langchain_core.runnables import RunnableConfig
from langgraph.graph import END, START, StateGraph

from bidouble.search import (
    SearchConfig,
    SearchReport,
    SignatureGroup,
    SignatureTable,
    certify_group,
    enumerate_types,
    evaluate_partition,
    partition_types,
)
from bidouble.state import SearchState

logger = logging.getLogger(__name__)


async def enumerate_node(state: SearchState, config: RunnableConfig) -> Dict[str, Any]:
    """Enumerate canonical types inside the configured box."""
    logger.info("🔄 Enumerate Node - Starting")
    types = list(enumerate_types(state.search_config))
    return {
        "types": types,
        "summary": state.summary.model_copy(update={"enumerated": len(types)}),
    }


async def group_node(state: SearchState, config: RunnableConfig) -> Dict[str, Any]:
    """Evaluate signatures partition by partition and merge the tables.

    Partitions are keyed by the first canonical branch and run in worker
    threads, at most `state.threads` at a time.
    """
    partitions = partition_types(state.types)
    logger.info(f"🔄 Group Node - {len(partitions)} partitions, {state.threads} threads")

    semaphore = asyncio.Semaphore(state.threads)

    async def evaluate(part: list) -> SignatureTable:
        async with semaphore:
            return await asyncio.to_thread(evaluate_partition, part, state.search_config)

    tables = await asyncio.gather(*(evaluate(part) for part in partitions.values()))
    table = functools.reduce(SignatureTable.absorb, tables, SignatureTable())

    groups = table.to_groups()
    summary = table.summary(state.summary.enumerated).model_copy(update={"groups": len(groups)})
    logger.info(f"📊 {len(groups)} signature groups, {summary.skipped_undetermined} types skipped")
    return {"groups": groups, "summary": summary}


async def certify_node(state: SearchState, config: RunnableConfig) -> Dict[str, Any]:
    """Run pair verdicts inside every group."""
    logger.info(f"🔄 Certify Node - {len(state.groups)} groups")

    async def certify(group: SignatureGroup) -> SignatureGroup:
        return await asyncio.to_thread(certify_group, group)

    groups = list(await asyncio.gather(*(certify(g) for g in state.groups)))
    certified = sum(len(g.certified_pairs) for g in groups)
    if certified:
        logger.info(f"✅ {certified} certified pairs")
    return {
        "groups": groups,
        "summary": state.summary.model_copy(update={"certified_pairs": certified}),
    }


def route_after_grouping(state: SearchState) -> Literal["certify", "__end__"]:
    """Certify only when requested and there is something to certify."""
    if state.search_config.certify_nondef and state.groups:
        return "certify"
    logger.info("✅ Search complete - skipping certification")
    return END


workflow = StateGraph(SearchState)

workflow.add_node("enumerate", enumerate_node)
workflow.add_node("group", group_node)
workflow.add_node("certify", certify_node)

workflow.add_edge(START, "enumerate")
workflow.add_edge("enumerate", "group")
workflow.add_conditional_edges("group", route_after_grouping, ["certify", END])
workflow.add_edge("certify", END)

graph = workflow.compile()


def _as_state(result: Any) -> SearchState:
    if isinstance(result, SearchState):
        return result
    return SearchState.model_validate(dict(result))


async def arun_search(cfg: SearchConfig, threads: Optional[int] = None) -> SearchReport:
    started = time.perf_counter()
    result = _as_state(await graph.ainvoke({"search_config": cfg, "threads": max(1, threads or 1)}))
    summary = result.summary.model_copy(
        update={"elapsed_seconds": time.perf_counter() - started}
    )
    logger.info(f"✅ Search finished in {summary.elapsed_seconds:.2f}s")
    return SearchReport(groups=result.groups, summary=summary)


def search_report(cfg: SearchConfig, threads: Optional[int] = None) -> SearchReport:
    """Run the pipeline to completion and return groups plus summary."""
    return asyncio.run(arun_search(cfg, threads))


def run_search(cfg: SearchConfig, threads: Optional[int] = None) -> List[SignatureGroup]:
    """Signature groups with at least two members, deterministic order."""
    return search_report(cfg, threads).groups


__all__ = ["graph", "run_search", "search_report", "arun_search"]

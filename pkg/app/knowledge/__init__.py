"""
Knowledge base: ICM models, service/resource/KPI extensions and catalog.
"""

from app.knowledge.catalog import (
    Catalog,
    catalog_from_graph,
    catalog_to_json,
    dump_catalog,
    kpi_of,
    kpis_of,
    load_builtin,
    load_catalog,
    parse_service_spec,
    register_service,
    resource_of,
)

__all__ = [
    "Catalog",
    "catalog_from_graph",
    "catalog_to_json",
    "dump_catalog",
    "kpi_of",
    "kpis_of",
    "load_builtin",
    "load_catalog",
    "parse_service_spec",
    "register_service",
    "resource_of",
]

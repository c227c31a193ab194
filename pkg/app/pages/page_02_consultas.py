"""
Página 2: Consultas sobre el grafo comprimido
"""
import time

import pandas as pd
import streamlit as st
from config import settings
from core.dictionary import TermKind
from core.errors import ItrError
from core.query import QueryStats, answer, neighborhood, node_label
from cli import parse_pattern


def _edges_table(view, edges) -> pd.DataFrame:
    d = view.dictionary
    return pd.DataFrame([
        {
            'Sujeto': d.lookup(e.nodes[0], TermKind.NODE),
            'Predicado': d.lookup(e.label, TermKind.EDGE_LABEL),
            'Objeto': d.lookup(e.nodes[1], TermKind.NODE),
        }
        for e in edges
    ], columns=['Sujeto', 'Predicado', 'Objeto'])


def render():
    """Renderizar página de consultas"""
    st.markdown('<h2 class="section-header">🔎 Consultas</h2>', unsafe_allow_html=True)

    view = st.session_state.view
    if view is None:
        st.warning(settings.MESSAGES['no_graph'])
        return

    tab1, tab2 = st.tabs(["Patrón de tripleta", "Vecindad de un nodo"])

    with tab1:
        text = st.text_input("Consulta (S P O)", value="? ? ?",
                             help="Usa ? para las variables y #N para IDs internos")
        if st.button("Ejecutar consulta", type="primary"):
            try:
                pattern = parse_pattern(text, view.dictionary)
            except ItrError as e:
                st.error(f"❌ {e}")
                pattern = False
            if pattern is None:
                st.info(settings.MESSAGES['no_results'])
            elif pattern is not False:
                stats = QueryStats()
                started = time.perf_counter()
                edges = list(answer(view, pattern, stats))
                elapsed = (time.perf_counter() - started) * 1000

                col_a, col_b, col_c, col_d = st.columns(4)
                col_a.metric("Resultados", f"{len(edges):,}")
                col_b.metric("Tiempo", f"{elapsed:.2f} ms")
                col_c.metric("Expandidas", f"{stats.expanded:,}")
                col_d.metric("Descartadas", f"{stats.filtered:,}")
                if edges:
                    st.dataframe(_edges_table(view, edges), use_container_width=True)
                else:
                    st.info(settings.MESSAGES['no_results'])

    with tab2:
        node_text = st.text_input("Nodo", help="Término del diccionario o #N")
        direction = st.radio("Dirección", ['both', 'out', 'in'], horizontal=True)
        if node_text:
            try:
                pattern = parse_pattern(f"{node_text} ? ?", view.dictionary)
            except ItrError as e:
                st.error(f"❌ {e}")
                return
            if pattern is None:
                st.info(settings.MESSAGES['no_results'])
                return
            node = pattern.s
            edges = list(neighborhood(view, node, direction))
            st.metric("Aristas incidentes", f"{len(edges):,}")
            if edges:
                st.dataframe(_edges_table(view, edges), use_container_width=True)

            if view.itr_plus:
                label = node_label(view, node)
                st.caption(f"🏷️ Etiqueta del nodo: {label if label is not None else '—'}")
            elif node in view.dictionary.node_labels:
                st.caption(f"🏷️ Etiqueta del nodo: {view.dictionary.node_labels[node]}")

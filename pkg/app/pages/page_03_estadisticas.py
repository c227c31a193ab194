"""
Página 3: Estadísticas del contenedor
"""
import matplotlib.pyplot as plt
import seaborn as sns
import streamlit as st
from config import settings
from cli import benchmark, random_subject_queries
from utils import container_summary, section_sizes, start_graph_breakdown, summarize_latencies


def render():
    """Renderizar página de estadísticas"""
    st.markdown('<h2 class="section-header">📊 Estadísticas</h2>', unsafe_allow_html=True)

    view = st.session_state.view
    if view is None:
        st.warning(settings.MESSAGES['no_graph'])
        return

    plt.style.use(settings.PLOT_STYLE)
    summary = container_summary(view)
    col1, col2, col3, col4 = st.columns(4)
    col1.metric("Nodos", f"{summary['nodes']:,}")
    col2.metric("Reglas", f"{summary['rules']:,}")
    col3.metric("Aristas iniciales", f"{summary['start_edges']:,}")
    col4.metric("Bytes", f"{summary['bytes']:,}")
    if not view.itr_plus and view.dictionary.node_labels:
        st.info(settings.MESSAGES['not_itr_plus'])

    # ===================
    # SECCIÓN 1: TAMAÑOS
    # ===================
    st.markdown("### 📦 Tamaño por sección")
    sizes = section_sizes(view)
    col_a, col_b = st.columns([1, 2])
    with col_a:
        st.dataframe(sizes, use_container_width=True)
        st.dataframe(start_graph_breakdown(view), use_container_width=True)
    with col_b:
        fig, ax = plt.subplots(figsize=(8, 4))
        sns.barplot(data=sizes, x='Sección', y='Bytes', hue='Sección',
                    palette=settings.COLOR_PALETTE, legend=False, ax=ax)
        ax.set_ylabel('Bytes')
        st.pyplot(fig)
        plt.close(fig)

    # ===================
    # SECCIÓN 2: MATRIZ DE INCIDENCIA
    # ===================
    st.markdown("### 🧩 Matriz de incidencia del grafo inicial")
    coo = view.start.incidence.to_coo()
    fig, ax = plt.subplots(figsize=(8, 6))
    ax.spy(coo, markersize=1 if coo.nnz > 1000 else 3)
    ax.set_xlabel('Arista (ordenada por etiqueta)')
    ax.set_ylabel('Nodo')
    st.pyplot(fig)
    plt.close(fig)

    # ===================
    # SECCIÓN 3: LATENCIA
    # ===================
    st.markdown("### ⏱️ Micro-benchmark (S, ?, ?)")
    n_queries = st.slider("Consultas", 10, 500, settings.DEFAULT_BENCH_QUERIES)
    repeat = st.slider("Repeticiones por consulta", 1, 50, 5)
    if st.button("Medir"):
        with st.spinner("Ejecutando consultas..."):
            measurements = benchmark(view, random_subject_queries(view, n_queries), repeat)
        st.dataframe(summarize_latencies(measurements), use_container_width=True)

        fig, ax = plt.subplots(figsize=(8, 4))
        sns.histplot(measurements['seconds'] * 1000, bins=30, ax=ax)
        ax.set_xlabel('Latencia (ms)')
        st.pyplot(fig)
        plt.close(fig)

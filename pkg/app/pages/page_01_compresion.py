"""
Página 1: Compresión de Grafos
"""
import streamlit as st
from config import settings
from core import InputFormat, compress_parsed, load_container, load_graph
from core.compressor import compression_ratio


def _show_stats(stats: dict, input_bytes: int):
    st.markdown("### 📋 Resultado de la Compresión")
    col_a, col_b, col_c, col_d = st.columns(4)
    col_a.metric("Aristas de entrada", f"{stats['edges_before']:,}")
    col_b.metric("Aristas iniciales", f"{stats['edges_after']:,}")
    col_c.metric("Reglas", f"{stats['rules']:,}")
    col_d.metric("Ratio", f"{compression_ratio(stats['bytes'], input_bytes):.2f}%")

    sizes = stats.get('sizes', [])
    if len(sizes) > 1:
        st.markdown("### 📉 Tamaño de la gramática por iteración")
        st.line_chart(sizes)


def is_new_upload(state, key) -> bool:
    """El uploader conserva el fichero entre reejecuciones: solo cuenta si cambió"""
    return key is not None and key != state.get('container_key')


def open_container(state, key, data: bytes, view) -> None:
    """Guardar el contenedor subido y olvidar las estadísticas de la compresión anterior"""
    state['container'] = data
    state['view'] = view
    state['container_key'] = key
    state['compress_stats'] = None
    state['input_bytes'] = None


def render():
    """Renderizar página de compresión"""
    st.markdown('<h2 class="section-header">🗜️ Compresión</h2>', unsafe_allow_html=True)

    col1, col2 = st.columns([2, 1])

    with col1:
        st.markdown("### Sube tu grafo")
        fmt_tag = st.selectbox(
            "Formato de entrada",
            list(settings.AVAILABLE_FORMATS),
            format_func=lambda tag: settings.AVAILABLE_FORMATS[tag]
        )
        uploaded_file = st.file_uploader(
            "Arrastra o selecciona un archivo",
            type=['nt', 'el', 'tsv', 'txt'],
            help="N-Triples (s p o .) o una arista por línea separada por tabuladores"
        )
        labels_file = None
        if fmt_tag == 'el':
            labels_file = st.file_uploader("Etiquetas de nodo (opcional)", type=['tsv', 'txt'])

        itr_plus = st.checkbox("Modo ITR+ (etiquetas de nodo como aristas de rango 1)", value=labels_file is not None)
        max_rank = st.slider("Rango máximo de los no terminales", 2, 16, settings.DEFAULT_MAX_RANK)
        k = st.slider("Aridad del k²-tree", 2, 8, settings.DEFAULT_K)

        if uploaded_file is not None and st.button("🚀 Comprimir", type="primary"):
            raw = uploaded_file.getvalue()
            if len(raw) > settings.MAX_FILE_SIZE_MB * 1024 * 1024:
                st.error(f"❌ El archivo supera el límite de {settings.MAX_FILE_SIZE_MB} MB")
                return
            labels_raw = labels_file.getvalue() if labels_file is not None else None
            parsed, error = load_graph(raw, InputFormat(fmt_tag), labels_raw)

            if error:
                st.error(f"❌ {error}")
            else:
                st.markdown(f'<div class="success-box">{settings.MESSAGES["graph_loaded"]}</div>',
                            unsafe_allow_html=True)
                with st.spinner("Comprimiendo..."):
                    data, stats = compress_parsed(parsed, itr_plus=itr_plus, max_rank=max_rank, k=k)
                view, error = load_container(data)
                if error:
                    st.error(f"❌ {error}")
                else:
                    st.session_state.container = data
                    st.session_state.view = view
                    st.session_state.compress_stats = stats
                    st.session_state.input_bytes = len(raw)
                    st.markdown(f'<div class="success-box">{settings.MESSAGES["compression_success"]}</div>',
                                unsafe_allow_html=True)

    with col2:
        st.markdown("### 📂 Abrir un contenedor")
        container_file = st.file_uploader("Archivo .itr", type=['itr'])
        container_key = (container_file.name, container_file.size) if container_file is not None else None
        if is_new_upload(st.session_state, container_key):
            view, error = load_container(container_file.getvalue())
            if error:
                st.error(f"❌ {error}")
            else:
                open_container(st.session_state, container_key, container_file.getvalue(), view)
                st.success(settings.MESSAGES['container_loaded'])

        st.markdown("### 📌 Instrucciones")
        st.info("""
        1. Elige el formato y sube el grafo
        2. Ajusta el modo ITR+ y los parámetros
        3. Comprime y descarga el contenedor

        **Formatos admitidos:**
        - N-Triples: IRIs, nodos en blanco y literales
        - Lista de aristas: origen⇥etiqueta⇥destino (nodos numéricos)
        """)

    if st.session_state.compress_stats is not None:
        _show_stats(st.session_state.compress_stats, st.session_state.input_bytes)
        st.download_button(
            "📥 Descargar contenedor .itr",
            st.session_state.container,
            file_name="grafo.itr",
            mime="application/octet-stream"
        )

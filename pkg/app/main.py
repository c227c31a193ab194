"""
ITRFlow - Compresión de grafos etiquetados con gramáticas
Interfaz Streamlit
"""
import streamlit as st
from config import settings
from styles import apply_custom_styles
from pages import (
    page_01_compresion,
    page_02_consultas,
    page_03_estadisticas
)

# Configuración de la página
st.set_page_config(
    page_title=settings.PAGE_TITLE,
    page_icon=settings.PAGE_ICON,
    layout=settings.LAYOUT,
    initial_sidebar_state=settings.INITIAL_SIDEBAR_STATE
)

# Aplicar estilos
apply_custom_styles()

# Inicializar session state
for key in ('container', 'view', 'compress_stats', 'input_bytes', 'container_key'):
    if key not in st.session_state:
        st.session_state[key] = None

# Banner
st.markdown("""
<div class='hero-banner'>
    <h1>🗜️ ITRFlow</h1>
    <p>Compresión de grafos con gramáticas y consultas sobre la forma comprimida</p>
</div>
""", unsafe_allow_html=True)

# Barra lateral de navegación
with st.sidebar:
    st.markdown("## 📋 Navegación")

    # Diccionario de páginas
    PAGES = {
        "🗜️ Compresión": page_01_compresion.render,
        "🔎 Consultas": page_02_consultas.render,
        "📊 Estadísticas": page_03_estadisticas.render
    }

    page = st.radio(
        "Selecciona una sección:",
        list(PAGES.keys())
    )

    st.markdown("---")

    view = st.session_state.view
    if view is not None:
        st.success("✅ Contenedor cargado")
        st.caption(f"🔗 Nodos: {view.node_count:,}")
        st.caption(f"📜 Reglas: {len(view.rules):,}")
        st.caption(f"🧱 Aristas iniciales: {len(view.start):,}")
        st.caption("➕ Modo ITR+" if view.itr_plus else "Modo ITR")
    else:
        st.info("⏳ Sin contenedor")

# Renderizar página seleccionada
PAGES[page]()

# Footer
st.markdown("---")
st.markdown("""
<div style='text-align: center; color: #666;'>
    <small>ITRFlow</small>
</div>
""", unsafe_allow_html=True)

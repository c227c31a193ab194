"""
Estilos CSS personalizados para la aplicación
"""

CUSTOM_CSS = """
<style>
    /* Ocultar el menú de navegación automático de Streamlit */
    [data-testid="stSidebarNav"] {
        display: none;
    }

    .hero-banner {
        background: linear-gradient(135deg, #0f4c75 0%, #3282b8 100%);
        padding: 2rem;
        border-radius: 15px;
        margin-bottom: 2rem;
        text-align: center;
    }
    .hero-banner h1 {
        color: white;
        font-size: 3rem;
        margin: 0;
        font-weight: 800;
    }
    .hero-banner p {
        color: #dbe9f6;
        font-size: 1.2rem;
        margin: 0.5rem 0 0 0;
    }
    .section-header {
        font-size: 1.8rem;
        font-weight: bold;
        color: #1b262c;
        margin-top: 2rem;
        margin-bottom: 1rem;
        border-bottom: 3px solid #3282b8;
        padding-bottom: 0.5rem;
    }
    .success-box {
        background-color: #d4edda;
        border: 1px solid #c3e6cb;
        border-radius: 5px;
        padding: 1rem;
        margin: 1rem 0;
    }
    .stDownloadButton button {
        background-color: #0f4c75;
        color: white;
        font-weight: bold;
    }
</style>
"""

def apply_custom_styles():
    """Función helper para aplicar estilos CSS"""
    import streamlit as st
    st.markdown(CUSTOM_CSS, unsafe_allow_html=True)

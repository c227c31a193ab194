"""Tests para el estado de sesión de la página de compresión"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "app"))

from pages.page_01_compresion import is_new_upload, open_container


class TestContainerUpload:
    def test_new_upload(self):
        state = {'container_key': None}
        assert is_new_upload(state, ('a.itr', 10))
        assert not is_new_upload(state, None)

    def test_same_file_on_rerun(self):
        state = {'container_key': ('a.itr', 10)}
        assert not is_new_upload(state, ('a.itr', 10))
        assert is_new_upload(state, ('b.itr', 12))

    def test_open_container_clears_previous_stats(self):
        state = {'container': b'old', 'view': None, 'container_key': None,
                 'compress_stats': {'rules': 3}, 'input_bytes': 500}
        open_container(state, ('b.itr', 12), b'ITR1...', 'vista')
        assert state['container'] == b'ITR1...'
        assert state['view'] == 'vista'
        assert state['container_key'] == ('b.itr', 12)
        assert state['compress_stats'] is None
        assert state['input_bytes'] is None
        assert not is_new_upload(state, ('b.itr', 12))
